"""Value types for CNF formulas.

Variables are small integers interned through a :class:`Vocabulary`.  A
clause is stored as two bitmasks (positive and negative variables), which
keeps hashing, subset tests and resolution cheap.  Everything here is
immutable except the vocabulary, which only ever grows.
"""
from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .errors import TautologyError


class Literal(NamedTuple):
    var: int
    positive: bool = True

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    @property
    def code(self) -> int:
        # canonical order: by variable, positive before negative
        return 2 * self.var + (not self.positive)


def pos(v: int) -> Literal:
    return Literal(v, True)


def neg(v: int) -> Literal:
    return Literal(v, False)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Clause:
    """A tautology-free set of literals."""

    __slots__ = ("pos", "neg", "_hash", "_key")

    def __init__(self, literals: Iterable[Literal] = ()):
        p = n = 0
        for lit in literals:
            var, positive = lit
            if var < 0:
                raise ValueError(f"negative variable id {var}")
            if positive:
                p |= 1 << var
            else:
                n |= 1 << var
        if p & n:
            raise TautologyError(
                f"clause contains variable {(p & n & -(p & n)).bit_length() - 1} in both polarities"
            )
        self.pos = p
        self.neg = n
        self._hash = hash((p, n))
        self._key = None

    @classmethod
    def from_masks(cls, p: int, n: int) -> "Clause":
        if p & n:
            raise TautologyError("clause contains a variable in both polarities")
        c = cls.__new__(cls)
        c.pos = p
        c.neg = n
        c._hash = hash((p, n))
        c._key = None
        return c

    @property
    def masks(self) -> tuple[int, int]:
        return self.pos, self.neg

    @property
    def varmask(self) -> int:
        return self.pos | self.neg

    def variables(self) -> frozenset[int]:
        return frozenset(_bits(self.pos | self.neg))

    def key(self) -> tuple[int, ...]:
        """Literal codes in canonical order; used for sorting clauses."""
        if self._key is None:
            self._key = tuple(lit.code for lit in self)
        return self._key

    def __iter__(self) -> Iterator[Literal]:
        p, n = self.pos, self.neg
        for v in _bits(p | n):
            yield Literal(v, bool(p >> v & 1))

    def __len__(self) -> int:
        return self.pos.bit_count() + self.neg.bit_count()

    def __contains__(self, lit) -> bool:
        var, positive = lit
        return bool((self.pos if positive else self.neg) >> var & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clause):
            return NotImplemented
        return self.pos == other.pos and self.neg == other.neg

    def __hash__(self) -> int:
        return self._hash

    def __le__(self, other: "Clause") -> bool:
        return not (self.pos & ~other.pos) and not (self.neg & ~other.neg)

    def __lt__(self, other: "Clause") -> bool:
        return self != other and self <= other

    def __ge__(self, other: "Clause") -> bool:
        return other <= self

    def __gt__(self, other: "Clause") -> bool:
        return other < self

    def __or__(self, other: "Clause") -> "Clause":
        return Clause.from_masks(self.pos | other.pos, self.neg | other.neg)

    def __sub__(self, other: "Clause") -> "Clause":
        return Clause.from_masks(self.pos & ~other.pos, self.neg & ~other.neg)

    def with_literal(self, lit: Literal) -> "Clause":
        return self | Clause((lit,))

    def without(self, lit: Literal) -> "Clause":
        bit = 1 << lit.var
        if lit.positive:
            return Clause.from_masks(self.pos & ~bit, self.neg)
        return Clause.from_masks(self.pos, self.neg & ~bit)

    def is_horn(self) -> bool:
        return self.pos & (self.pos - 1) == 0

    def __repr__(self) -> str:
        if not self.pos and not self.neg:
            return "Clause([])"
        body = " | ".join(("" if l.positive else "~") + f"v{l.var}" for l in self)
        return f"Clause({body})"


EMPTY_CLAUSE = Clause()


class Formula:
    """A set of clauses, iterated in canonical order."""

    __slots__ = ("clauses", "_order")

    def __init__(self, clauses: Iterable[Clause] = ()):
        cs = frozenset(clauses)
        for c in cs:
            if not isinstance(c, Clause):
                raise TypeError(f"not a clause: {c!r}")
        self.clauses = cs
        self._order = None

    @classmethod
    def from_masks(cls, pairs: Iterable[tuple[int, int]]) -> "Formula":
        return cls(Clause.from_masks(p, n) for p, n in pairs)

    def sorted(self) -> list[Clause]:
        if self._order is None:
            self._order = sorted(self.clauses, key=Clause.key)
        return self._order

    def masks(self) -> list[tuple[int, int]]:
        return [(c.pos, c.neg) for c in self.sorted()]

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.clauses)

    def __contains__(self, c) -> bool:
        return c in self.clauses

    def __eq__(self, other) -> bool:
        if isinstance(other, Formula):
            return self.clauses == other.clauses
        if isinstance(other, (set, frozenset)):
            return self.clauses == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.clauses)

    def __le__(self, other: "Formula") -> bool:
        return self.clauses <= other.clauses

    def __lt__(self, other: "Formula") -> bool:
        return self.clauses < other.clauses

    def __or__(self, other: "Formula") -> "Formula":
        return Formula(self.clauses | other.clauses)

    def __sub__(self, other: "Formula") -> "Formula":
        return Formula(self.clauses - other.clauses)

    def __and__(self, other: "Formula") -> "Formula":
        return Formula(self.clauses & other.clauses)

    def add(self, *cs: Clause) -> "Formula":
        return Formula(self.clauses.union(cs))

    def remove(self, *cs: Clause) -> "Formula":
        return Formula(self.clauses.difference(cs))

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.clauses)

    @property
    def varmask(self) -> int:
        m = 0
        for c in self.clauses:
            m |= c.pos | c.neg
        return m

    def variables(self) -> frozenset[int]:
        return frozenset(_bits(self.varmask))

    def is_horn(self) -> bool:
        return all(c.is_horn() for c in self.clauses)

    def __repr__(self) -> str:
        return "Formula([" + ", ".join(map(repr, self.sorted())) + "])"


def size(f: Formula) -> int:
    """Total number of literal occurrences."""
    return f.size


def clauses_with_literal(f: Formula, lit: Literal) -> Formula:
    return Formula(c for c in f.clauses if lit in c)


def substitute(f: Formula, x: int, value: bool) -> Formula:
    """Replace variable ``x`` by a truth constant and simplify.

    Clauses made true disappear; the falsified literal is removed from
    the others.  The result never mentions ``x``.
    """
    bit = 1 << x
    out = []
    for c in f.clauses:
        sat_mask, drop_mask = (c.pos, c.neg) if value else (c.neg, c.pos)
        if sat_mask & bit:
            continue
        if drop_mask & bit:
            if value:
                c = Clause.from_masks(c.pos, c.neg & ~bit)
            else:
                c = Clause.from_masks(c.pos & ~bit, c.neg)
        out.append(c)
    return Formula(out)


def mask_of(vars: Iterable[int]) -> int:
    m = 0
    for v in vars:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    return list(_bits(mask))


class Vocabulary:
    """Maps display names to dense integer ids.

    Names are interned on first use.  :meth:`intern_all` interns a batch in
    sorted order so that the canonical (id-based) order of a freshly parsed
    problem is alphabetical.
    """

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        self.intern_all(names)

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def intern(self, name: str) -> int:
        v = self._ids.get(name)
        if v is None:
            if not name:
                raise ValueError("empty variable name")
            v = len(self._names)
            self._names.append(name)
            self._ids[name] = v
        return v

    def intern_all(self, names: Iterable[str]) -> list[int]:
        names = list(names)
        for name in sorted(set(names)):
            self.intern(name)
        return [self._ids[n] for n in names]

    def id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def name(self, v: int) -> str:
        if 0 <= v < len(self._names):
            return self._names[v]
        return f"v{v}"

    def fresh(self, base: str = "x") -> int:
        """Intern a new variable whose name starts with ``base``."""
        name = base
        while name in self._ids:
            name += "'"
        return self.intern(name)

    def lit(self, text: str) -> Literal:
        """``'a'`` or ``'-a'`` (also ``'~a'``) to a literal, interning the name."""
        if text[:1] in ("-", "~"):
            return Literal(self.intern(text[1:]), False)
        return Literal(self.intern(text), True)

    def clause(self, *lits: str) -> Clause:
        return Clause(self.lit(t) for t in lits)

    def formula(self, *clauses: Iterable[str]) -> Formula:
        """Build a formula from lists of literal strings, e.g. ``(['a','-b'], ['c'])``."""
        return Formula(self.clause(*c) for c in clauses)

    def lit_str(self, lit: Literal) -> str:
        return ("" if lit.positive else "-") + self.name(lit.var)

    def clause_str(self, c: Clause) -> str:
        if not c.pos and not c.neg:
            return "[]"
        return " | ".join(self.lit_str(l) for l in c)

    def formula_str(self, f: Formula) -> str:
        return "{" + ", ".join(self.clause_str(c) for c in f) + "}"
