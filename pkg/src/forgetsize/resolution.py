"""Resolution steps, resolution closure and prime implicates."""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import Clause, Formula
from .errors import ResourceLimitError

DEFAULT_CLOSURE_CAP = 100_000


def resolve_pair(c1: Clause, c2: Clause) -> set[Clause]:
    """Non-tautological resolvents of two clauses (at most one exists).

    Two clauses clashing on more than one variable only resolve into
    tautologies, so they yield nothing.
    """
    clash = (c1.pos & c2.neg) | (c1.neg & c2.pos)
    if not clash or clash & (clash - 1):
        return set()
    return {Clause.from_masks((c1.pos | c2.pos) & ~clash, (c1.neg | c2.neg) & ~clash)}


def resolve_sets(a, b) -> Formula:
    """One resolution step between every clause of ``a`` and every clause of ``b``."""
    out = set()
    for c1 in a:
        for c2 in b:
            out |= resolve_pair(c1, c2)
    return Formula(out)


def resolve_with(c: Clause, f) -> Formula:
    return resolve_sets((c,), f)


@dataclass(frozen=True)
class ClosureResult:
    closure: Formula
    prime: Formula
    rounds: int


def resolution_closure(f: Formula, cap: int = DEFAULT_CLOSURE_CAP) -> ClosureResult:
    res = kernels.closure(f.masks(), cap)
    if res is None:
        raise ResourceLimitError(f"resolution closure exceeds {cap} clauses")
    items, rounds = res
    closure = Formula.from_masks(items)
    prime = Formula.from_masks(kernels.minimal(items))
    return ClosureResult(closure, prime, rounds)


def prime_implicates(f: Formula, cap: int = DEFAULT_CLOSURE_CAP) -> Formula:
    return resolution_closure(f, cap).prime
