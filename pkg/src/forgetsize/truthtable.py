"""Truth tables packed into Python integers.

Bit ``a`` of a table is the value under the assignment whose ``i``-th bit
gives the ``i``-th variable of the space's order.  Intended for up to
roughly two dozen variables.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .core import Clause, Formula, Literal


class TableSpace:
    def __init__(self, order: Sequence[int]):
        self.order = list(order)
        self.index = {v: i for i, v in enumerate(self.order)}
        if len(self.index) != len(self.order):
            raise ValueError("duplicate variable in table order")
        self.n = len(self.order)
        self.full = (1 << (1 << self.n)) - 1
        self._vars = [self._var_table(i) for i in range(self.n)]
        self._clauses: dict[Clause, int] = {}

    def _var_table(self, i: int) -> int:
        half = 1 << i
        period = half << 1
        reps = (1 << self.n) // period
        block = ((1 << half) - 1) << half
        rep = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
        return block * rep

    def var(self, i: int) -> int:
        return self._vars[i]

    def literal(self, lit: Literal) -> int:
        t = self._vars[self.index[lit.var]]
        return t if lit.positive else self.full & ~t

    def clause(self, c: Clause) -> int:
        t = self._clauses.get(c)
        if t is None:
            t = 0
            for lit in c:
                t |= self.literal(lit)
            self._clauses[c] = t
        return t

    def formula(self, f: Iterable[Clause]) -> int:
        t = self.full
        for c in f:
            t &= self.clause(c)
            if not t:
                break
        return t

    def flip(self, t: int, i: int) -> int:
        """Table of the same function with variable ``i`` negated."""
        h = 1 << i
        vt = self._vars[i]
        return ((t & vt) >> h) | ((t & ~vt & self.full) << h)

    def exists(self, t: int, i: int) -> int:
        return t | self.flip(t, i)

    def drop_top(self, t: int, m: int) -> int:
        """Existentially project away the top ``m`` variables of the order.

        The result is a table over the first ``n - m`` variables.
        """
        width = 1 << self.n
        for _ in range(m):
            width >>= 1
            t = (t | (t >> width)) & ((1 << width) - 1)
        return t

    def assignment(self, a: int, k: int | None = None) -> list[Literal]:
        """Literals of assignment index ``a`` over the first ``k`` variables."""
        k = self.n if k is None else k
        return [Literal(self.order[i], bool(a >> i & 1)) for i in range(k)]


def popcount(t: int) -> int:
    return t.bit_count()


def lowest_bit(t: int) -> int:
    return (t & -t).bit_length() - 1
