"""Generators and desk-scale verifiers for four hardness reductions.

Each builder turns a source problem (a CNF formula, or a two-block QBF) into
a formula A, a set of variables to keep and a size bound k.  Forgetting the
other variables from A is expressible within size k exactly when the source
problem has the "easy" answer:

==============  ======================  ==================  ==============
kind            source                  easy answer         otherwise
==============  ======================  ==================  ==============
``horn_conp``   CNF F                   F unsatisfiable     size >= k + 2
``horn_np``     CNF F                   F satisfiable       size > k
``general_p2``  forall X exists Y. CNF  valid               size >= k + 2
``general_s2``  exists X forall Y. DNF  valid               size > k
==============  ======================  ==================  ==============

Source variables of the outer block are renamed ``x1..xn`` (inner block
``y1..``) in a fresh vocabulary, so generated names never collide with them.
"""
from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .core import Clause, Formula, Literal, Vocabulary, mask_of
from .errors import ForgetSizeError, ResourceLimitError
from .forgetting import ForgetSpec, forget_all, min_forget_size, necessary_literals, expresses_forgetting
from .minimization import is_minimal
from .redundancy import superirredundant_clauses
from .sat import find_model, satisfiable


class Kind(str, enum.Enum):
    HORN_CONP = "horn_conp"
    HORN_NP = "horn_np"
    GENERAL_P2 = "general_p2"
    GENERAL_S2 = "general_s2"


class Order(str, enum.Enum):
    FORALL_EXISTS = "forall_exists"
    EXISTS_FORALL = "exists_forall"


# the answer under which a size-k formula exists
_EASY = {Kind.HORN_CONP: False, Kind.HORN_NP: True, Kind.GENERAL_P2: True, Kind.GENERAL_S2: True}
# how far above k the hard branch is pushed
_GAP = {Kind.HORN_CONP: 2, Kind.HORN_NP: 1, Kind.GENERAL_P2: 2, Kind.GENERAL_S2: 1}


@dataclass(frozen=True)
class QbfInstance:
    """Two-block QBF.  ``matrix`` is a CNF Formula, or for DNF a sequence of
    terms, each term a :class:`Clause` read as a conjunction."""

    universal_vars: frozenset
    existential_vars: frozenset
    matrix: Union[Formula, tuple]
    order: Order = Order.FORALL_EXISTS

    def __init__(self, universal_vars, existential_vars, matrix, order=Order.FORALL_EXISTS):
        u, e = frozenset(universal_vars), frozenset(existential_vars)
        if u & e:
            raise ValueError("quantifier blocks share variables")
        if not isinstance(matrix, Formula):
            matrix = tuple(matrix)
        used = 0
        for c in matrix:
            used |= c.varmask
        if used & ~mask_of(u | e):
            raise ValueError("matrix mentions an unquantified variable")
        object.__setattr__(self, "universal_vars", u)
        object.__setattr__(self, "existential_vars", e)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "order", Order(order))

    @property
    def is_dnf(self) -> bool:
        return not isinstance(self.matrix, Formula)

    @property
    def outer(self) -> list[int]:
        block = self.universal_vars if self.order is Order.FORALL_EXISTS else self.existential_vars
        return sorted(block)

    @property
    def inner(self) -> list[int]:
        block = self.existential_vars if self.order is Order.FORALL_EXISTS else self.universal_vars
        return sorted(block)


def _holds(matrix, dnf: bool, t: int) -> bool:
    if dnf:
        return any((c.pos & ~t) == 0 and (c.neg & t) == 0 for c in matrix)
    return all((c.pos & t) or (c.neg & ~t) for c in matrix)


def qbf_eval(q: QbfInstance, cap: int = 22) -> bool:
    """Truth of the QBF by expanding both blocks."""
    outer, inner = q.outer, q.inner
    if len(outer) + len(inner) > cap:
        raise ResourceLimitError(f"{len(outer) + len(inner)} QBF variables exceed the cap {cap}")
    forall_outer = q.order is Order.FORALL_EXISTS
    for ao in itertools.product((0, 1), repeat=len(outer)):
        to = sum(b << v for b, v in zip(ao, outer))
        inner_vals = (
            _holds(q.matrix, q.is_dnf, to | sum(b << v for b, v in zip(ai, inner)))
            for ai in itertools.product((0, 1), repeat=len(inner))
        )
        inner_ok = any(inner_vals) if forall_outer else all(inner_vals)
        if forall_outer and not inner_ok:
            return False
        if not forall_outer and inner_ok:
            return True
    return forall_outer


def _outer_witness(q: QbfInstance) -> Optional[dict[int, bool]]:
    """An outer-block assignment making the inner block succeed (exists-forall)."""
    outer, inner = q.outer, q.inner
    for ao in itertools.product((0, 1), repeat=len(outer)):
        to = sum(b << v for b, v in zip(ao, outer))
        if all(_holds(q.matrix, q.is_dnf, to | sum(b << v for b, v in zip(ai, inner)))
               for ai in itertools.product((0, 1), repeat=len(inner))):
            return {v: bool(b) for v, b in zip(outer, ao)}
    return None


@dataclass
class ReductionInstance:
    kind: Kind
    formula_A: Formula
    keep: frozenset
    bound_k: int
    source: object
    source_answer: bool
    vocab: Vocabulary
    families: dict = field(default_factory=dict)
    # source variable id -> instance variable id
    source_map: dict = field(default_factory=dict)
    # size-k formula expressing the forgetting on the easy branch
    candidate: Optional[Formula] = None
    # literals every expression of the forgetting contains
    forced_literals: frozenset = frozenset()

    @property
    def easy(self) -> bool:
        return self.source_answer == _EASY[self.kind]

    @property
    def gap(self) -> int:
        return _GAP[self.kind]

    def spec(self) -> ForgetSpec:
        return ForgetSpec(self.formula_A, self.keep)

    def family_bound(self) -> int:
        """k recomputed from the sizes of the generated clause families."""
        fam = self.families
        n = len(fam["X_ids"])
        if self.kind is Kind.HORN_CONP or self.kind is Kind.GENERAL_P2:
            return fam["k_witness"].size
        if self.kind is Kind.HORN_NP:
            return 2 * n + fam["A_T"].size + fam["A_C"].size + fam["A_B"].size
        return 2 * n + (fam["A_T"] | fam["A_D"] | fam["A_B"]).size


class _Names:
    def __init__(self):
        self.vocab = Vocabulary()

    def v(self, name: str) -> int:
        return self.vocab.intern(name)

    def p(self, name: str) -> Literal:
        return Literal(self.v(name), True)

    def n(self, name: str) -> Literal:
        return Literal(self.v(name), False)


def _outer_names(names: _Names, outer: Sequence[int], inner: Sequence[int] = ()) -> dict[int, int]:
    m = {}
    for i, v in enumerate(outer, 1):
        m[v] = names.v(f"x{i}")
    for j, v in enumerate(inner, 1):
        m[v] = names.v(f"y{j}")
    return m


def _rename(c: Clause, m: dict[int, int]) -> Clause:
    return Clause(Literal(m[l.var], l.positive) for l in c)


def closed_form_bound(kind: Kind | str, n: int, clauses: Sequence[Clause]) -> int:
    """k in closed form, from the size of the source only."""
    kind = Kind(kind)
    m = len(clauses)
    occ = sum(len(c) for c in clauses)
    if kind is Kind.HORN_CONP:
        return 2 * n + 2
    if kind is Kind.GENERAL_P2:
        return 2 * n + 3
    if kind is Kind.HORN_NP:
        a_t, a_c = 4 * n, 2 * occ
        a_b = 2 * n * (n + m + 2) + 4 * n
        return 2 * n + a_t + a_c + a_b
    a_t = 4 * n
    a_d = occ + m
    a_b = (2 * n * m * (n + 3) + 4 * n) if m else 0
    return 2 * n + a_t + a_d + a_b


def _cnf_source(f: Formula, variables: Optional[Iterable[int]]) -> tuple[list[int], list[Clause]]:
    xs = sorted(set(variables) if variables is not None else f.variables())
    if f.varmask & ~mask_of(xs):
        raise ValueError("formula mentions variables outside the given alphabet")
    return xs, f.sorted()


def build_horn_conp(f: Formula, variables: Optional[Iterable[int]] = None) -> ReductionInstance:
    xs, fs = _cnf_source(f, variables)
    names = _Names()
    xmap = _outer_names(names, xs)
    n, m = len(xs), len(fs)
    I = range(1, n + 1)
    J = range(1, m + 1)
    x = {i: xmap[v] for i, v in zip(I, xs)}
    P, N = names.p, names.n
    xe, tt, cc = [], [], []
    for i in I:
        xn = Literal(x[i], False)
        xe.append(Clause([xn, N(f"e{i}")]))
        tt.append(Clause([xn, P(f"t{i}")]))
        tt.append(Clause([N(f"e{i}"), P(f"t{i}")]))
    for j, fj in zip(J, fs):
        for lit in fj:
            i = xs.index(lit.var) + 1
            src = Literal(x[i], False) if lit.positive else N(f"e{i}")
            cc.append(Clause([src, P(f"c{j}")]))
    long = Clause([N(f"t{i}") for i in I] + [N(f"c{j}") for j in J] + [N("a"), P("b")])
    ab = Clause([P("a"), N("b")])
    A = Formula(xe + tt + cc + [long, ab])
    keep = frozenset(x.values()) | {names.v(f"e{i}") for i in I} | {names.v("a"), names.v("b")}
    answer = satisfiable(f)
    witness = Formula(xe + [ab])
    forced = {Literal(x[i], False) for i in I} | {N(f"e{i}") for i in I} | {P("a"), N("b")}
    if answer:
        forced |= {N("a"), P("b")}
    return ReductionInstance(
        Kind.HORN_CONP, A, keep, 2 * n + 2, f, answer, names.vocab,
        families={"k_witness": witness, "X_ids": [x[i] for i in I]},
        source_map=xmap, candidate=witness if not answer else None,
        forced_literals=frozenset(forced),
    )


def _literals(f: Formula) -> frozenset:
    return frozenset(l for c in f for l in c)


def build_horn_np(f: Formula, variables: Optional[Iterable[int]] = None) -> ReductionInstance:
    xs, fs = _cnf_source(f, variables)
    names = _Names()
    xmap = _outer_names(names, xs)
    n, m = len(xs), len(fs)
    I = range(1, n + 1)
    J = range(1, m + 1)
    x = {i: xmap[v] for i, v in zip(I, xs)}
    P, N = names.p, names.n
    X = lambda i: Literal(x[i], True)
    a_f, a_t, a_c, a_b = [], [], [], []
    for i in I:
        a_f += [Clause([X(i), N(f"o{i}")]), Clause([P(f"o{i}"), N("q")]),
                Clause([P(f"e{i}"), N(f"p{i}")]), Clause([P(f"p{i}"), N("q")])]
        a_t += [Clause([-X(i), P(f"t{i}")]), Clause([N(f"e{i}"), P(f"t{i}")])]
    for j, fj in zip(J, fs):
        for lit in fj:
            i = xs.index(lit.var) + 1
            src = -X(i) if lit.positive else N(f"e{i}")
            a_c.append(Clause([src, P(f"c{j}")]))
    body = [N(f"t{i}") for i in I] + [N(f"c{j}") for j in J]
    for i in I:
        a_b += [Clause(body + [X(i), N(f"r{i}")]), Clause([P(f"r{i}"), N("q")]),
                Clause(body + [P(f"e{i}"), N(f"s{i}")]), Clause([P(f"s{i}"), N("q")])]
    fam = {"A_F": Formula(a_f), "A_T": Formula(a_t), "A_C": Formula(a_c), "A_B": Formula(a_b)}
    A = Formula(a_f + a_t + a_c + a_b)
    keep = set(x.values()) | {names.v("q")}
    for i in I:
        keep |= {names.v(f"{s}{i}") for s in "etrs"}
    keep |= {names.v(f"c{j}") for j in J}
    k = 2 * n + fam["A_T"].size + fam["A_C"].size + fam["A_B"].size
    model = find_model(f)
    answer = model is not None
    candidate = None
    if answer:
        a_r = [Clause([X(i), N("q")]) if model.get(xs[i - 1], False) else Clause([P(f"e{i}"), N("q")])
               for i in I]
        candidate = Formula(a_r) | fam["A_T"] | fam["A_C"] | fam["A_B"]
    fam["retained"] = fam["A_T"] | fam["A_C"] | fam["A_B"]
    fam["X_ids"] = [x[i] for i in I]
    return ReductionInstance(Kind.HORN_NP, A, frozenset(keep), k, f, answer, names.vocab,
                             families=fam, source_map=xmap, candidate=candidate,
                             forced_literals=_literals(fam["retained"]))


def build_general_p2(q: QbfInstance) -> ReductionInstance:
    if q.is_dnf or q.order is not Order.FORALL_EXISTS:
        raise ValueError("general_p2 needs a forall-exists QBF with a CNF matrix")
    names = _Names()
    outer, inner = q.outer, q.inner
    matrix = list(q.matrix.sorted())
    xmap = _outer_names(names, outer, inner)
    xs = [xmap[v] for v in outer]
    fs = [_rename(c, xmap) for c in matrix]
    if not satisfiable(Formula(fs)):
        # forall X+{s} exists Y. s | F has the same truth and a satisfiable matrix
        s = names.v(f"x{len(outer) + 1}")
        xs.append(s)
        fs = [c.with_literal(Literal(s, True)) for c in fs]
    P, N = names.p, names.n
    n, m = len(xs), len(fs)
    A = []
    for j, fj in enumerate(fs, 1):
        A.append(fj | Clause([P(f"c{j}"), P("q")]))
        A.append(Clause([N(f"c{j}"), P("r")]))
    A.append(Clause([N("r"), N("a"), P("b"), P("q")]))
    abq = Clause([P("a"), N("b"), P("q")])
    A.append(abq)
    xe = [Clause([Literal(xv, True), P(f"e{i}")]) for i, xv in enumerate(xs, 1)]
    A += xe
    keep = frozenset(xs) | {names.v(f"e{i}") for i in range(1, n + 1)} | {names.v(t) for t in "abq"}
    answer = qbf_eval(q)
    witness = Formula([abq] + xe)
    forced = {Literal(xv, True) for xv in xs} | {P(f"e{i}") for i in range(1, n + 1)}
    forced |= {P("a"), N("b"), P("q")}
    if not answer:
        forced |= {N("a"), P("b")}
    return ReductionInstance(
        Kind.GENERAL_P2, Formula(A), keep, 2 * n + 3, q, answer, names.vocab,
        families={"k_witness": witness, "X_ids": xs},
        source_map=xmap, candidate=witness if answer else None, forced_literals=frozenset(forced),
    )


def build_general_s2(q: QbfInstance) -> ReductionInstance:
    if not q.is_dnf or q.order is not Order.EXISTS_FORALL:
        raise ValueError("general_s2 needs an exists-forall QBF with a DNF matrix")
    names = _Names()
    outer, inner = q.outer, q.inner
    xmap = _outer_names(names, outer, inner)
    terms = sorted({_rename(t, xmap) for t in q.matrix}, key=Clause.key)
    xs = [xmap[v] for v in outer]
    ys = [xmap[v] for v in inner]
    index = {xv: i for i, xv in enumerate(xs, 1)}
    P, N = names.p, names.n
    n, m = len(xs), len(terms)
    I = range(1, n + 1)
    X = lambda i: Literal(xs[i - 1], True)
    a_f, a_t, a_d, a_b = [], [], [], []
    for i in I:
        a_f += [Clause([X(i), N(f"o{i}")]), Clause([P(f"o{i}"), P("q")]),
                Clause([P(f"e{i}"), N(f"p{i}")]), Clause([P(f"p{i}"), P("q")])]
        a_t += [Clause([-X(i), P(f"t{i}")]), Clause([N(f"e{i}"), P(f"t{i}")])]
    for j, term in enumerate(terms, 1):
        lits = []
        for lit in term:
            if lit.var in index and not lit.positive:
                # -x_i is renamed to e_i before the term is negated
                lits.append(N(f"e{index[lit.var]}"))
            else:
                lits.append(-lit)
        a_d.append(Clause(lits + [P(f"d{j}")]))
    body = [N(f"t{i}") for i in I]
    for j in range(1, m + 1):
        for i in I:
            a_b += [Clause(body + [N(f"d{j}"), X(i), N(f"r{i}")]), Clause([P(f"r{i}"), P("q")]),
                    Clause(body + [N(f"d{j}"), P(f"e{i}"), N(f"s{i}")]), Clause([P(f"s{i}"), P("q")])]
    fam = {"A_F": Formula(a_f), "A_T": Formula(a_t), "A_D": Formula(a_d), "A_B": Formula(a_b)}
    A = Formula(a_f + a_t + a_d + a_b)
    keep = set(xs) | set(ys) | {names.v("q")}
    for i in I:
        keep |= {names.v(f"{s}{i}") for s in "etrs"}
    keep |= {names.v(f"d{j}") for j in range(1, m + 1)}
    k = 2 * n + (fam["A_T"] | fam["A_D"] | fam["A_B"]).size
    w = _outer_witness(q)
    answer = w is not None
    candidate = None
    if answer:
        a_r = [Clause([X(i), P("q")]) if w[outer[i - 1]] else Clause([P(f"e{i}"), P("q")]) for i in I]
        candidate = Formula(a_r) | fam["A_T"] | fam["A_D"] | fam["A_B"]
    fam["retained"] = fam["A_T"] | fam["A_D"] | fam["A_B"]
    fam["X_ids"] = xs
    return ReductionInstance(Kind.GENERAL_S2, A, frozenset(keep), k, q, answer, names.vocab,
                             families=fam, source_map=xmap, candidate=candidate,
                             forced_literals=_literals(fam["retained"]))


BUILDERS = {
    Kind.HORN_CONP: build_horn_conp,
    Kind.HORN_NP: build_horn_np,
    Kind.GENERAL_P2: build_general_p2,
    Kind.GENERAL_S2: build_general_s2,
}


@dataclass
class CheckResult:
    name: str
    passed: Optional[bool]  # None: not applicable or skipped
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    kind: Kind
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _timed(name: str, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except ResourceLimitError as exc:
        passed, detail = False, f"resource limit: {exc}"
    except ForgetSizeError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, passed, detail, time.perf_counter() - t0)


def verify_reduction(inst: ReductionInstance, hard: bool = False, optional_cap: int = 64,
                     cap_enum: int = 1 << 20) -> VerificationReport:
    """Check an instance against the claims made for its construction.

    ``minimal``: A is a minimal formula.  ``candidate``: on the easy branch
    the explicit size-k formula expresses the forgetting.  ``forced``: the
    literals claimed unavoidable are found by :func:`necessary_literals`
    (for ``horn_np``/``general_s2`` these are the literals of the families
    claimed to survive into every minimum formula).  ``size`` (only with ``hard=True``): exhaustive search of
    the minimum size of the forgetting, which must be k on the easy branch
    and at least k + gap otherwise.
    """
    spec = inst.spec()
    checks = []

    def minimal():
        ok = is_minimal(inst.formula_A, optional_cap=optional_cap)
        return ok, "all clauses superirredundant" if ok else "A is not minimal"

    checks.append(_timed("minimal", minimal))

    def candidate():
        if not inst.easy:
            return None, "hard branch: no size-k candidate"
        c = inst.candidate
        if c.size != inst.bound_k:
            return False, f"candidate size {c.size} != k={inst.bound_k}"
        ok = expresses_forgetting(c, spec, cap_enum=cap_enum)
        return ok, f"size {c.size} candidate {'expresses' if ok else 'does not express'} the forgetting"

    checks.append(_timed("candidate", candidate))

    def forced():
        found = {r.literal for r in necessary_literals(spec, cap_enum=cap_enum)}
        missing = inst.forced_literals - found
        names = sorted(inst.vocab.lit_str(l) for l in missing)
        return not missing, "missing: " + ", ".join(names) if missing else f"{len(inst.forced_literals)} literals found"

    checks.append(_timed("forced", forced))

    if hard:
        def size():
            limit = inst.bound_k + inst.gap - 1
            r = min_forget_size(spec, exhaustive=False, size_limit=limit, optional_cap=optional_cap)
            if inst.easy:
                return r.size == inst.bound_k, f"minimum size {r.size}, k={inst.bound_k}"
            return r.size is None, (
                f"no formula of size <= {limit}" if r.size is None else f"found size {r.size} <= {limit}"
            )

        checks.append(_timed("size", size))
    return VerificationReport(inst.kind, checks)
