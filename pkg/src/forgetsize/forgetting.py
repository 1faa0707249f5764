"""Forgetting variables from CNF formulas.

A formula B expresses forgetting all variables but ``keep`` from A when B
only mentions ``keep`` and, for every complete assignment S to ``keep``,
S is consistent with A exactly when it is consistent with B.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from . import kernels
from .core import Clause, Formula, Literal, mask_of
from .errors import ResourceLimitError, VariableEscapeError
from .minimization import DEFAULT_OPTIONAL_CAP, minimize
from .resolution import DEFAULT_CLOSURE_CAP, prime_implicates, resolve_sets
from .truthtable import TableSpace, lowest_bit

DEFAULT_ENUM_CAP = 1 << 20
# above this many variables the semantic checks use the SAT solver
TABLE_MAX_VARS = 22


@dataclass(frozen=True)
class ForgetSpec:
    formula: Formula
    keep: frozenset

    def __init__(self, formula: Formula, keep: Iterable[int]):
        object.__setattr__(self, "formula", formula)
        object.__setattr__(self, "keep", frozenset(keep))

    @property
    def keep_mask(self) -> int:
        return mask_of(self.keep)

    def forgotten(self) -> frozenset:
        return self.formula.variables() - self.keep

    @classmethod
    def forgetting(cls, formula: Formula, forget: Iterable[int]) -> "ForgetSpec":
        return cls(formula, formula.variables() - frozenset(forget))


@dataclass(frozen=True)
class NecessaryLiteralReport:
    literal: Literal
    witness: tuple  # complete literal set over the relevant keep variables


class MinForgetSize(NamedTuple):
    size: Optional[int]
    witnesses: frozenset


def forget_one(f: Formula, x: int) -> Formula:
    """Resolve ``x`` out: drop its clauses, add their pairwise resolvents on ``x``."""
    bit = 1 << x
    posx, negx, rest = [], [], []
    for c in f.clauses:
        if c.pos & bit:
            posx.append(c)
        elif c.neg & bit:
            negx.append(c)
        else:
            rest.append(c)
    if not posx and not negx:
        return f
    return Formula(rest + list(resolve_sets(posx, negx).clauses))


def _growth(f: Formula, x: int) -> int:
    return forget_one(f, x).size - f.size


def forget_all(spec: ForgetSpec, order: str = "ascending", cap: Optional[int] = None) -> Formula:
    """Forget every non-kept variable one at a time.

    ``order`` is ``"ascending"`` (by variable id) or ``"greedy"`` (next is
    the variable whose elimination grows the formula least).  ``cap`` bounds
    the number of clauses of intermediate formulas.
    """
    f = spec.formula
    todo = sorted(spec.forgotten())
    while todo:
        if order == "greedy":
            x = min(todo, key=lambda v: (_growth(f, v), v))
        elif order == "ascending":
            x = todo[0]
        else:
            raise ValueError(f"unknown order {order!r}")
        todo.remove(x)
        f = forget_one(f, x)
        if cap is not None and len(f) > cap:
            raise ResourceLimitError(f"intermediate formula exceeds {cap} clauses")
    return f


def forget_by_prime_implicates(spec: ForgetSpec, cap: int = DEFAULT_CLOSURE_CAP) -> Formula:
    """Prime implicates of the formula that mention only kept variables."""
    km = spec.keep_mask
    return Formula(c for c in prime_implicates(spec.formula, cap) if not c.varmask & ~km)


def _relevant_keep(spec: ForgetSpec, extra: int = 0) -> list[int]:
    km = spec.keep_mask & (spec.formula.varmask | extra)
    return [v for v in sorted(spec.keep) if km >> v & 1]


def _check_enum(k: int, cap_enum: int) -> None:
    if (1 << k) > cap_enum:
        raise ResourceLimitError(f"2^{k} literal sets exceed the enumeration cap {cap_enum}")


def consistency_table(spec: ForgetSpec, keep_order: list[int], method: str = "auto") -> int:
    """Bit ``a`` is set iff assignment ``a`` to ``keep_order`` is consistent with the formula."""
    f = spec.formula
    others = sorted(f.variables() - set(keep_order))
    if method == "auto":
        method = "table" if len(keep_order) + len(others) <= TABLE_MAX_VARS else "sat"
    if method == "table":
        space = TableSpace(keep_order + others)
        return space.drop_top(space.formula(f), len(others))
    if method != "sat":
        raise ValueError(f"unknown method {method!r}")
    ms = f.masks()
    bits_ = [1 << v for v in keep_order]
    allm = mask_of(keep_order)
    out = 0
    for a in range(1 << len(keep_order)):
        t = 0
        for i, b in enumerate(bits_):
            if a >> i & 1:
                t |= b
        if kernels.sat(ms, t, allm & ~t) is not None:
            out |= 1 << a
    return out


def expresses_forgetting(candidate: Formula, spec: ForgetSpec, cap_enum: int = DEFAULT_ENUM_CAP,
                         method: str = "auto") -> bool:
    """Whether ``candidate`` expresses forgetting all but ``spec.keep`` from the formula.

    Kept variables mentioned by neither formula are irrelevant and skipped.
    ``method`` selects truth tables (``"table"``), one SAT call per literal
    set (``"sat"``), or picks by alphabet size (``"auto"``).
    """
    escaped = candidate.varmask & ~spec.keep_mask
    if escaped:
        v = (escaped & -escaped).bit_length() - 1
        raise VariableEscapeError(f"candidate mentions non-kept variable {v}")
    order = _relevant_keep(spec, candidate.varmask)
    _check_enum(len(order), cap_enum)
    want = consistency_table(spec, order, method)
    cspace = TableSpace(order)
    return cspace.formula(candidate) == want


def necessary_literals(spec: ForgetSpec, cap_enum: int = DEFAULT_ENUM_CAP,
                       method: str = "auto") -> list[NecessaryLiteralReport]:
    """Literals that every formula expressing the forgetting must contain.

    A kept literal qualifies when some complete literal set S over the kept
    variables containing it is consistent with the formula while S with
    that literal negated is not.  This is sufficient, not necessary: other
    literals may be unavoidable for other reasons.
    """
    order = _relevant_keep(spec)
    _check_enum(len(order), cap_enum)
    table = consistency_table(spec, order, method)
    space = TableSpace(order)
    out = []
    for i, v in enumerate(order):
        flipped = space.flip(table, i)
        vt = space.var(i)
        for positive in (True, False):
            side = vt if positive else space.full & ~vt
            hits = table & side & ~flipped
            if hits:
                w = tuple(space.assignment(lowest_bit(hits)))
                out.append(NecessaryLiteralReport(Literal(v, positive), w))
    return out


def min_forget_size(spec: ForgetSpec, exhaustive: bool = True, size_limit: Optional[int] = None,
                    optional_cap: int = DEFAULT_OPTIONAL_CAP,
                    closure_cap: int = DEFAULT_CLOSURE_CAP) -> MinForgetSize:
    """Minimum size of a formula expressing the forgetting, with the witnesses.

    All formulas expressing the same forgetting are equivalent, so this is
    the minimization of the prime implicates of any one of them.  With
    ``size_limit``, size is None when nothing that small exists.
    """
    # resolving the forgotten variables out first keeps the closure small
    g = prime_implicates(forget_all(spec), closure_cap)
    r = minimize(g, exhaustive=exhaustive, size_limit=size_limit,
                 optional_cap=optional_cap, closure_cap=closure_cap, pool=g)
    return MinForgetSize(r.min_size, r.witnesses)
