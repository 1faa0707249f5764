"""Splitting a clause on a fresh variable to make it superirredundant.

Replacing ``c1 | c2`` by ``c1 | x`` and ``c2 | -x`` (``x`` new) changes
nothing once ``x`` is forgotten, and usually pins both halves into every
minimum-size equivalent formula.  Two things can defeat it: a half that is
superredundant on its own, and other clauses that resolve with both halves.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .core import Clause, Formula, Literal, Vocabulary
from .errors import RepairImpossibleError, ResourceLimitError, SplitError
from .redundancy import is_superredundant
from .resolution import resolve_pair


@dataclass(frozen=True)
class SplitPlan:
    target: Clause
    part1: Clause
    part2: Clause
    fresh: int
    result: Formula


@dataclass(frozen=True)
class SplitHazard:
    part: int  # 1 or 2
    clause: Clause
    reason: str  # "superredundant-alone" or "already-present"


@dataclass(frozen=True)
class SplitSafetyReport:
    precondition_violations: list = field(default_factory=list)
    collateral: Formula = field(default_factory=Formula)

    @property
    def safe(self) -> bool:
        return not self.precondition_violations and not len(self.collateral)


def _fresh_id(f: Formula, vocab: Optional[Vocabulary], prefix: str) -> int:
    used = f.varmask
    if vocab is None:
        return used.bit_length()
    k = 1
    while True:
        name = f"{prefix}{k}"
        if name not in vocab:
            v = vocab.intern(name)
            if not used >> v & 1:
                return v
        k += 1


def _validate(f: Formula, target: Clause, part1: Clause, part2: Clause, fresh: int) -> None:
    if target not in f:
        raise SplitError("split target is not a clause of the formula")
    if (part1.pos & part2.pos) or (part1.neg & part2.neg) or (part1 | part2) != target:
        raise SplitError("parts do not partition the target clause")
    if not len(part1) or not len(part2):
        raise SplitError("both parts of a split must be non-empty")
    if f.varmask >> fresh & 1:
        raise SplitError(f"split variable {fresh} already occurs in the formula")


def plan_split(f: Formula, target: Clause, part1: Clause, fresh: Optional[int] = None,
               vocab: Optional[Vocabulary] = None, prefix: str = "_s") -> SplitPlan:
    """Plan splitting ``target`` into ``part1 | x`` and ``(target - part1) | -x``.

    Without ``fresh`` a new variable is taken: the next unused id, or a new
    ``prefix``-named variable of ``vocab`` when one is given.
    """
    if not part1 <= target:
        raise SplitError("first part is not a subset of the target clause")
    part2 = target - part1
    if fresh is None:
        fresh = _fresh_id(f, vocab, prefix)
    _validate(f, target, part1, part2, fresh)
    x = Literal(fresh, True)
    result = f.remove(target).add(part1.with_literal(x), part2.with_literal(-x))
    return SplitPlan(target, part1, part2, fresh, result)


def split(f: Formula, plan: SplitPlan) -> Formula:
    _validate(f, plan.target, plan.part1, plan.part2, plan.fresh)
    x = Literal(plan.fresh, True)
    result = f.remove(plan.target).add(plan.part1.with_literal(x), plan.part2.with_literal(-x))
    if result != plan.result:
        raise SplitError("plan result does not match the formula")
    return result


def analyze_split(f: Formula, plan: SplitPlan) -> SplitSafetyReport:
    """Hazards that may keep the split from producing superirredundant clauses.

    A part is flagged when it is superredundant in the formula extended by
    that part alone, or when it is already a clause of the formula (then
    its extension by the split variable is entailed outright).  Collateral
    clauses are the other clauses resolving with both parts; only those
    can lose superirredundancy through the split.
    """
    _validate(f, plan.target, plan.part1, plan.part2, plan.fresh)
    violations = []
    for k, p in ((1, plan.part1), (2, plan.part2)):
        if p in f:
            violations.append(SplitHazard(k, p, "already-present"))
        elif is_superredundant(f.add(p), p).superredundant:
            violations.append(SplitHazard(k, p, "superredundant-alone"))
    collateral = Formula(
        c for c in f.clauses
        if c != plan.target and resolve_pair(c, plan.part1) and resolve_pair(c, plan.part2)
    )
    return SplitSafetyReport(violations, collateral)


def _partitions(c: Clause):
    """Candidate first parts: the first literal alone, then every other
    proper subset containing the first literal, smallest first."""
    lits = list(c)
    first, rest = lits[0], lits[1:]
    for k in range(0, len(rest)):
        for extra in combinations(rest, k):
            yield Clause((first,) + extra)


def _superredundant(f: Formula, c: Clause) -> bool:
    return is_superredundant(f, c).superredundant


def make_superirredundant(f: Formula, target: Clause, max_splits: int = 32,
                          vocab: Optional[Vocabulary] = None,
                          prefix: str = "_s") -> tuple[Formula, list[SplitPlan]]:
    """Split ``target`` and then whatever the splits make superredundant.

    Each split uses the first partition (first literal against the rest,
    then larger first parts) whose two halves come out superirredundant.
    Clauses that were superirredundant before a split and are not after it
    are split in turn.  Raises :class:`RepairImpossibleError` when no
    partition of some clause works.
    """
    if target not in f:
        raise SplitError("split target is not a clause of the formula")
    plans: list[SplitPlan] = []
    cur = f
    queue = [target]
    while queue:
        c = queue.pop(0)
        if c not in cur or not _superredundant(cur, c):
            continue
        if len(plans) >= max_splits:
            raise ResourceLimitError(f"repair needs more than {max_splits} splits")
        if len(c) < 2:
            raise RepairImpossibleError("a clause with fewer than two literals cannot be split")
        before = {d for d in cur.clauses if d != c and not _superredundant(cur, d)}
        chosen = None
        reasons = []
        fresh = _fresh_id(cur, vocab, prefix)
        x = Literal(fresh, True)
        for part1 in _partitions(c):
            plan = plan_split(cur, c, part1, fresh=fresh)
            report = analyze_split(cur, plan)
            if report.precondition_violations:
                reasons.append(report.precondition_violations)
                continue
            h1, h2 = plan.part1.with_literal(x), plan.part2.with_literal(-x)
            if _superredundant(plan.result, h1) or _superredundant(plan.result, h2):
                continue
            chosen = plan
            break
        if chosen is None:
            raise RepairImpossibleError(
                f"no partition of the clause makes it superirredundant ({len(reasons)} blocked by hazards)"
            )
        plans.append(chosen)
        cur = chosen.result
        lost = sorted((d for d in before if _superredundant(cur, d)), key=Clause.key)
        queue.extend(lost)
    return cur, plans
