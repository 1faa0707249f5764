"""Satisfiability, entailment and equivalence.

DPLL with unit propagation and pure literals, branching on the lowest
variable with the false branch first, so witnesses are reproducible.  Horn
inputs take the forward-chaining path instead.
"""
from __future__ import annotations

from typing import Iterable, Optional

from . import kernels
from .core import Clause, Formula, Literal, mask_of


def _masks(f) -> list[tuple[int, int]]:
    if isinstance(f, Formula):
        return [(c.pos, c.neg) for c in f.clauses]
    return [(c.pos, c.neg) for c in f]


def _is_horn_masks(ms) -> bool:
    return all(not p & (p - 1) for p, _ in ms)


def _solve(ms, t: int = 0, f: int = 0, horn: Optional[bool] = None) -> Optional[int]:
    if horn is None:
        horn = _is_horn_masks(ms)
    if horn:
        return kernels.horn_sat(ms, t, f)
    return kernels.sat(ms, t, f)


def find_model(f: Formula, assume: Iterable[Literal] = ()) -> Optional[dict[int, bool]]:
    """A model of ``f`` (plus the assumed literals) over its variables, or None."""
    t = f_ = 0
    dom = f.varmask
    for v, positive in assume:
        if positive:
            t |= 1 << v
        else:
            f_ |= 1 << v
        dom |= 1 << v
    if t & f_:
        return None
    m = _solve(_masks(f), t, f_)
    if m is None:
        return None
    out = {}
    d = dom
    while d:
        low = d & -d
        out[low.bit_length() - 1] = bool(m & low)
        d ^= low
    return out


def satisfiable(f: Formula) -> bool:
    return _solve(_masks(f)) is not None


def evaluate(f: Formula, model: dict[int, bool]) -> bool:
    for c in f.clauses:
        if not any(model.get(v, False) == positive for v, positive in c):
            return False
    return True


def entails(f, c: Clause) -> bool:
    """Every model of ``f`` satisfies ``c`` (``f`` is a Formula or clause iterable)."""
    # assume the negation of every literal of c
    return _solve(_masks(f), c.neg, c.pos) is None


def entails_all(f, g) -> bool:
    ms = _masks(f)
    horn = _is_horn_masks(ms)
    return all(_solve(ms, c.neg, c.pos, horn) is None for c in g)


def equivalent(f: Formula, g: Formula) -> bool:
    return entails_all(f, g - f) and entails_all(g, f - g)


def consistent_with(f: Formula, s: Iterable[Literal]) -> bool:
    """``f`` together with the unit clauses of ``s`` is satisfiable."""
    lits = list(s)
    t = mask_of(v for v, p in lits if p)
    fl = mask_of(v for v, p in lits if not p)
    if t & fl:
        raise ValueError("inconsistent literal set")
    return _solve(_masks(f), t, fl) is not None


def is_horn(f: Formula) -> bool:
    return f.is_horn()
