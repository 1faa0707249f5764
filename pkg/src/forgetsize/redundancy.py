"""Redundancy and superredundancy of clauses.

A clause of F is superredundant when the rest of the resolution closure of
F entails it.  Three equivalent tests are provided:

* ``definition``: build the closure and test entailment;
* ``first_step``: F minus the clause plus its one-step resolvents entails it
  (no closure needed; the default);
* ``one_two``: the closure holds a strict subset of the clause, or two
  clauses that resolve exactly into it on a variable outside it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .core import Clause, Formula, Literal
from .errors import ClauseNotInFormulaError
from .resolution import DEFAULT_CLOSURE_CAP, resolution_closure, resolve_with
from .sat import entails, satisfiable


class Method(str, enum.Enum):
    DEFINITION = "definition"
    FIRST_STEP = "first_step"
    ONE_TWO = "one_two"


@dataclass(frozen=True)
class RedundancyReport:
    clause: Clause
    redundant: bool
    superredundant: bool
    method: Method
    witness: Optional[Formula] = None

    @property
    def superirredundant(self) -> bool:
        return not self.superredundant


def _check_member(f: Formula, c: Clause) -> None:
    if c not in f:
        raise ClauseNotInFormulaError("clause is not in the formula")


def is_redundant(f: Formula, c: Clause) -> bool:
    _check_member(f, c)
    return entails(f.clauses - {c}, c)


def first_step_formula(f: Formula, c: Clause) -> Formula:
    """F minus c, plus every resolvent of c with a clause of F."""
    return Formula((f.clauses - {c}) | resolve_with(c, f).clauses)


def is_superredundant(f: Formula, c: Clause, method: Method | str = Method.FIRST_STEP,
                      cap: int = DEFAULT_CLOSURE_CAP) -> RedundancyReport:
    _check_member(f, c)
    method = Method(method)
    redundant = entails(f.clauses - {c}, c)
    if method is Method.ONE_TWO:
        rep = superredundant_one_two(f, c, cap)
        return RedundancyReport(c, redundant, rep.superredundant, method, rep.witness)
    if method is Method.DEFINITION:
        g = resolution_closure(f, cap).closure.remove(c)
    else:
        g = first_step_formula(f, c)
    sr = redundant or entails(g, c)
    return RedundancyReport(c, redundant, sr, method, g if sr else None)


def superredundant_one_two(f: Formula, c: Clause, cap: int = DEFAULT_CLOSURE_CAP) -> RedundancyReport:
    """Search the closure for a strict subset of ``c`` or a pair resolving into it.

    The witness is ``{c'}`` for a derived strict subset ``c'``, or the pair
    ``{c1 | a, c2 | -a}`` with ``c1 | c2 == c`` and ``a`` outside ``c``.
    """
    _check_member(f, c)
    redundant = entails(f.clauses - {c}, c)
    closure = resolution_closure(f, cap).closure
    cp, cn, cv = c.pos, c.neg, c.pos | c.neg
    # literal outside c -> masks of the part inside c, by polarity of a
    halves: dict[tuple[int, bool], list[Clause]] = {}
    for d in closure.sorted():
        if d != c and d <= c:
            return RedundancyReport(c, redundant, True, Method.ONE_TWO, Formula([d]))
        xp, xn = d.pos & ~cp, d.neg & ~cn
        extra = xp | xn
        if extra & (extra - 1) or extra & cv or not extra:
            continue
        v = extra.bit_length() - 1
        halves.setdefault((v, bool(xp)), []).append(d)
    for (v, positive), ds in halves.items():
        if not positive:
            continue
        others = halves.get((v, False), ())
        bit = 1 << v
        for d1 in ds:
            for d2 in others:
                if ((d1.pos | d2.pos) & ~bit) == cp and ((d1.neg | d2.neg) & ~bit) == cn:
                    return RedundancyReport(c, redundant, True, Method.ONE_TWO, Formula([d1, d2]))
    return RedundancyReport(c, redundant, False, Method.ONE_TWO, None)


def superredundant_unit(f: Formula, lit: Literal) -> bool:
    """Superredundancy of the unit clause ``lit`` without resolution.

    Drop the unit, delete the opposite literal wherever it occurs, and test
    whether what remains entails ``lit``.
    """
    unit = Clause((lit,))
    _check_member(f, unit)
    opp = -lit
    if not any(opp in d for d in f.clauses):
        return entails(f.clauses - {unit}, unit)
    g = []
    for d in f.clauses:
        if d == unit:
            continue
        g.append(d.without(opp) if opp in d else d)
    return entails(g, unit)


def _drop_pure_others(clauses: set[Clause], c: Clause) -> set[Clause]:
    """Remove clauses containing a single-polarity literal that is not in ``c``."""
    g = set(clauses)
    while True:
        ap = an = 0
        for d in g:
            ap |= d.pos
            an |= d.neg
        purep = ap & ~an & ~c.pos
        puren = an & ~ap & ~c.neg
        if not purep and not puren:
            return g
        g = {d for d in g if d == c or not (d.pos & purep or d.neg & puren)}


def _component(clauses: set[Clause], c: Clause) -> set[Clause]:
    comp = {c}
    vars_ = c.varmask
    rest = set(clauses) - comp
    grew = True
    while grew and vars_:
        grew = False
        for d in list(rest):
            if d.varmask & vars_:
                comp.add(d)
                rest.discard(d)
                vars_ |= d.varmask
                grew = True
    return comp


def reduce_for_clause(f: Formula, c: Clause) -> Formula:
    """A subformula in which ``c`` has the same superredundancy status.

    Applies the pure-literal removal and, when the variable-disjoint rest is
    satisfiable, restricts to the component of ``c``.
    """
    g = _drop_pure_others(f.clauses, c)
    comp = _component(g, c)
    if len(comp) < len(g) and satisfiable(Formula(g - comp)):
        g = comp
    return Formula(g)


def superirredundant_clauses(f: Formula, shortcuts: bool = True) -> Formula:
    out = []
    for c in f:
        g = reduce_for_clause(f, c) if shortcuts else f
        if not entails(g.clauses - {c}, c) and not entails(first_step_formula(g, c), c):
            out.append(c)
    return Formula(out)


def superredundant_clauses(f: Formula) -> Formula:
    return f - superirredundant_clauses(f)


def redundant_clauses(f: Formula) -> Formula:
    return Formula(c for c in f if entails(f.clauses - {c}, c))
