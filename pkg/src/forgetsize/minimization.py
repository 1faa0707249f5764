"""Minimum-size equivalent CNF formulas.

Every minimum-size equivalent formula is made of prime implicates, and
contains every superirredundant clause of the input.  The search is a
branch and bound over the remaining prime implicates, testing equivalence
on truth tables (or with the SAT solver for larger alphabets).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import Clause, Formula
from .errors import ResourceLimitError
from .redundancy import superirredundant_clauses
from .resolution import DEFAULT_CLOSURE_CAP, prime_implicates
from .sat import entails, entails_all
from .truthtable import TableSpace

DEFAULT_OPTIONAL_CAP = 24
TABLE_MAX_VARS = 20


@dataclass(frozen=True)
class SearchStats:
    nodes: int = 0
    candidates: int = 0


@dataclass(frozen=True)
class MinimizationResult:
    """``min_size`` is None when ``size_limit`` excluded every candidate."""

    min_size: Optional[int]
    witnesses: frozenset
    forced_clauses: Formula
    search_stats: SearchStats = field(default_factory=SearchStats)

    @property
    def witness_list(self) -> list[Formula]:
        return sorted(self.witnesses, key=lambda w: [c.key() for c in w])


def _branch_and_bound(ops, lens, base, base_size, best, exhaustive):
    """Include/exclude search over the optional clauses.

    ``ops`` provides ``done(state)``, ``feasible(state, i)`` and
    ``add(state, i)`` (None when clause ``i`` adds nothing).  Returns the
    best size and the index lists of the witnesses of that size.
    """
    n = len(lens)
    found: list[list[int]] = []
    stats = [0, 0]
    chosen: list[int] = []
    best_box = [best]

    def over(size):
        if size > best_box[0]:
            return True
        return not exhaustive and bool(found) and size >= best_box[0]

    def dfs(i, state, size):
        stats[0] += 1
        if ops.done(state):
            stats[1] += 1
            if size < best_box[0]:
                best_box[0] = size
                found.clear()
            if not (found and not exhaustive):
                found.append(list(chosen))
            return
        if i == n:
            stats[1] += 1
            return
        # at least one more clause is needed, none smaller than lens[i]
        if over(size + lens[i]) or not ops.feasible(state, i):
            return
        nxt = ops.add(state, i)
        if nxt is not None:
            chosen.append(i)
            dfs(i + 1, nxt, size + lens[i])
            chosen.pop()
        dfs(i + 1, state, size)

    if not over(base_size):
        dfs(0, base, base_size)
    return best_box[0], found, stats


class _TableOps:
    def __init__(self, space: TableSpace, target: int, optional: list[Clause]):
        self.target = target
        self.tabs = [space.clause(c) for c in optional]
        n = len(optional)
        self.suffix = [space.full] * (n + 1)
        for i in range(n - 1, -1, -1):
            self.suffix[i] = self.suffix[i + 1] & self.tabs[i]

    def done(self, cur):
        return cur == self.target

    def feasible(self, cur, i):
        return cur & self.suffix[i] == self.target

    def add(self, cur, i):
        nxt = cur & self.tabs[i]
        return None if nxt == cur else nxt


class _SatOps:
    def __init__(self, f: Formula, optional: list[Clause]):
        self.need = list(f.clauses)
        self.optional = optional

    def done(self, cur):
        return entails_all(cur, self.need)

    def feasible(self, cur, i):
        return entails_all(cur + self.optional[i:], self.need)

    def add(self, cur, i):
        c = self.optional[i]
        return None if entails(cur, c) else cur + [c]


def minimize(f: Formula, exhaustive: bool = True, size_limit: Optional[int] = None,
             optional_cap: int = DEFAULT_OPTIONAL_CAP, closure_cap: int = DEFAULT_CLOSURE_CAP,
             pool: Optional[Formula] = None) -> MinimizationResult:
    """All minimum-size formulas equivalent to ``f``.

    With ``exhaustive=False`` only the first minimum witness is kept.  With
    ``size_limit`` only formulas of at most that size are searched and
    ``min_size`` is None if there is none.  ``pool`` may supply the prime
    implicates when the caller already has them.
    """
    if pool is None:
        pool = prime_implicates(f, closure_cap)
    empty = Clause()
    if empty in pool:
        # unsatisfiable: the empty clause alone is the unique minimum
        forced = superirredundant_clauses(f)
        w = Formula([empty])
        ok = size_limit is None or 0 <= size_limit
        return MinimizationResult(0 if ok else None, frozenset([w]) if ok else frozenset(),
                                  forced, SearchStats(1, 1))
    forced_f = superirredundant_clauses(f)
    forced = forced_f.sorted()
    optional = sorted(pool.clauses - forced_f.clauses, key=lambda c: (len(c), c.key()))
    limit = float("inf") if size_limit is None else size_limit
    if len(optional) > optional_cap:
        lower = forced_f.size
        upper = f.size
        raise ResourceLimitError(
            f"{len(optional)} optional prime implicates exceed the cap of {optional_cap}",
            lower=lower, upper=upper,
        )
    varmask = f.varmask | pool.varmask
    nvars = varmask.bit_count()
    lens = [len(c) for c in optional]
    base_size = forced_f.size
    if nvars <= TABLE_MAX_VARS:
        space = TableSpace(sorted(f.variables() | pool.variables()))
        ops = _TableOps(space, space.formula(pool), optional)
        base = space.formula(forced)
    else:
        ops = _SatOps(f, optional)
        base = list(forced)
    best, found, stats = _branch_and_bound(ops, lens, base, base_size, limit, exhaustive)
    if not found:
        return MinimizationResult(None, frozenset(), forced_f, SearchStats(*stats))
    if not exhaustive:
        found = found[:1]
    witnesses = frozenset(Formula(forced + [optional[j] for j in idx]) for idx in found)
    return MinimizationResult(int(best), witnesses, forced_f, SearchStats(*stats))


def is_minimal(f: Formula, optional_cap: int = DEFAULT_OPTIONAL_CAP,
               closure_cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    """No equivalent formula is smaller than ``f``."""
    if len(superirredundant_clauses(f)) == len(f):
        return True
    if f.size == 0:
        return True
    smaller = minimize(f, exhaustive=False, size_limit=f.size - 1,
                       optional_cap=optional_cap, closure_cap=closure_cap)
    return smaller.min_size is None
