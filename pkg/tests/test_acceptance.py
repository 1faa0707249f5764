"""Acceptance criteria 1-8.

Each test carries an ``acceptance`` marker; the conftest prints one
PASS/FAIL line per criterion at the end of the run.  Run this file
directly to get just those lines.
"""
import itertools
import random
import subprocess
import sys

import pytest

from forgetsize.core import Clause, Formula, Literal, substitute
from forgetsize.errors import RepairImpossibleError
from forgetsize.forgetting import (ForgetSpec, expresses_forgetting, forget_all,
                                   forget_by_prime_implicates, forget_one, min_forget_size)
from forgetsize.minimization import is_minimal, minimize
from forgetsize.redundancy import (Method, is_redundant, is_superredundant,
                                   superirredundant_clauses)
from forgetsize.reductions import (Order, QbfInstance, build_general_p2, build_general_s2,
                                   build_horn_conp, build_horn_np, verify_reduction)
from forgetsize.resolution import prime_implicates
from forgetsize.sat import equivalent, satisfiable
from forgetsize.splitting import analyze_split, make_superirredundant, plan_split

import oracle
from helpers import C, F, V

acceptance = pytest.mark.acceptance


def sr(f, c):
    return is_superredundant(f, c).superredundant


def random_clause(rng, nvars, max_len):
    vs = rng.sample(range(nvars), rng.randint(1, min(max_len, nvars)))
    return Clause(Literal(v, rng.random() < 0.5) for v in vs)


def random_formula(rng, nvars=5, max_clauses=6, max_len=3, min_clauses=0):
    return Formula(random_clause(rng, nvars, max_len) for _ in range(rng.randint(min_clauses, max_clauses)))


def random_keep(rng, nvars=5):
    return frozenset(v for v in range(nvars) if rng.random() < 0.5)


# 1 -------------------------------------------------------------------------

@acceptance(1, "named examples replay")
def test_criterion_1_examples():
    # (a) a superredundant clause can still be in the only minimum formula
    f = F("a", "-ab", "a-b")
    assert f.size == 5
    r = minimize(f)
    assert r.min_size == 2 and r.witnesses == {F("a", "b")}
    assert sr(f, C("a")) and C("a") in F("a", "b")
    # (b) irredundant yet superredundant
    f = F("a", "-ab", "-ba")
    assert not is_redundant(f, C("a")) and sr(f, C("a"))
    # (c) minimal although every clause is superredundant
    f = F("-ab", "-bc", "-ca")
    assert is_minimal(f) and all(sr(f, c) for c in f)
    # (d) forgetting can introduce redundancy
    f = F("abx", "-xc", "ac")
    assert is_minimal(f)
    g = forget_one(f, V.id("x"))
    assert g == F("abc", "ac") and is_redundant(g, C("abc"))
    # (e) splitting makes the superredundant clause superirredundant
    f = F("abc", "-ad", "-cd", "-dac")
    assert sr(f, C("abc"))
    g = plan_split(f, C("abc"), C("a"), fresh=V.id("x")).result
    assert len(g) == 5 and superirredundant_clauses(g) == g
    # (f) substitution examples and split hazards
    f = F("a-x", "a", "x")
    assert sr(f, C("a"))
    g = substitute(f, V.id("x"), True)
    assert g == F("a") and not sr(g, C("a"))
    f = F("ab", "bc", "-b-d", "-cde")
    g = substitute(substitute(f, V.id("c"), True), V.id("d"), False)
    assert g == F("ab", "e")
    assert not sr(g, C("ab")) and not sr(f, C("ab"))
    f = F("ab", "-ac", "a-c")
    rep = analyze_split(f, plan_split(f, C("ab"), C("a")))
    assert [(h.part, h.clause) for h in rep.precondition_violations] == [(1, C("a"))]
    with pytest.raises(RepairImpossibleError):
        make_superirredundant(f, C("ab"))
    f = F("abcd", "-ab-cd", "ae", "-e-a-c")
    plan = plan_split(f, C("-ab-cd"), C("-ab"))
    assert analyze_split(f, plan).collateral == F("abcd")
    assert not sr(f, C("abcd")) and sr(plan.result, C("abcd"))
    g, plans = make_superirredundant(f, C("-ab-cd"))
    assert len(plans) == 2 and superirredundant_clauses(g) == g


# 2 -------------------------------------------------------------------------

@acceptance(2, "superredundancy methods agree")
def test_criterion_2_methods_agree():
    rng = random.Random(2)
    checked = 0
    for _ in range(1000):
        f = random_formula(rng)
        for c in f:
            verdicts = {m: sr_method(f, c, m) for m in Method}
            assert len(set(verdicts.values())) == 1, (f, c, verdicts)
            checked += 1
    assert checked > 2000


def sr_method(f, c, m):
    return is_superredundant(f, c, method=m).superredundant


# 3 -------------------------------------------------------------------------

@acceptance(3, "forgetting correctness")
def test_criterion_3_forgetting():
    rng = random.Random(3)
    for _ in range(500):
        f = random_formula(rng)
        keep = random_keep(rng)
        spec = ForgetSpec(f, keep)
        a = forget_all(spec)
        b = forget_by_prime_implicates(spec)
        c = forget_all(spec, order="greedy")
        drop = sorted(f.variables() - keep)
        rng.shuffle(drop)
        d = f
        for x in drop:
            d = forget_one(d, x)
        for g in (a, b, c, d):
            assert expresses_forgetting(g, spec)
            assert oracle.expresses_forgetting(oracle.as_sets(g), oracle.as_sets(f), keep)
        assert equivalent(a, b) and equivalent(a, c) and equivalent(a, d)


# 4 -------------------------------------------------------------------------

def _variant(f, rng):
    """An equivalent formula with extra entailed clauses and weakened copies."""
    out = set(f.clauses)
    pis = prime_implicates(f).sorted()
    out.update(rng.sample(pis, k=min(2, len(pis))))
    free = [v for v in range(5) if v not in f.variables()]
    for c in list(out):
        if free and rng.random() < 0.4:
            out.add(c.with_literal(Literal(rng.choice(free), rng.random() < 0.5)))
    return Formula(out)


@acceptance(4, "superirredundancy and minimality")
def test_criterion_4_minimality():
    rng = random.Random(4)
    all_si = 0
    for _ in range(300):
        f = random_formula(rng, nvars=4, max_clauses=5)
        r = minimize(f)
        size, ws = oracle.min_equivalent_size(oracle.as_sets(f))
        assert r.min_size == size
        assert {frozenset(oracle.as_sets(w)) for w in r.witnesses} == {frozenset(w) for w in ws}
        forced = superirredundant_clauses(f)
        for w in r.witnesses:
            assert forced <= w
        if forced == f:
            all_si += 1
            assert is_minimal(f)
        g = _variant(f, rng)
        assert equivalent(f, g)
        r2 = minimize(g)
        assert (r2.min_size, r2.witnesses) == (r.min_size, r.witnesses)
        assert is_minimal(g) == (g.size == r.min_size)
    assert all_si >= 30


# 5 -------------------------------------------------------------------------

@acceptance(5, "split properties")
def test_criterion_5_split():
    rng = random.Random(5)
    plans = safe = 0
    while plans < 300:
        f = random_formula(rng, nvars=5, max_clauses=5, max_len=3, min_clauses=1)
        targets = [c for c in f if len(c) >= 2]
        if not targets:
            continue
        c = rng.choice(sorted(targets, key=Clause.key))
        lits = list(c)
        rng.shuffle(lits)
        part1 = Clause(lits[:rng.randint(1, len(lits) - 1)])
        plan = plan_split(f, c, part1)
        plans += 1
        g = plan.result
        assert expresses_forgetting(f, ForgetSpec(g, f.variables()))
        rep = analyze_split(f, plan)
        if rep.precondition_violations:
            continue
        x = Literal(plan.fresh, True)
        assert not sr(g, plan.part1.with_literal(x))
        assert not sr(g, plan.part2.with_literal(-x))
        before = superirredundant_clauses(f).remove(c)
        after = superirredundant_clauses(g)
        if rep.safe:
            safe += 1
            assert before <= after
        else:
            assert Formula(d for d in before if d not in rep.collateral) <= after
    assert safe >= 50

    # dropping any side condition of the split guarantee admits a counterexample
    def after_split(f, c1, c2):
        x = V.lit("x")
        return f.remove(c1 | c2).add(c1.with_literal(x), c2.with_literal(-x))

    for f, c1, c2 in ((Formula(), C("ab"), C("a")),   # c1 | c2 not in F
                      (F("ab"), C("ab"), C("a")),     # c1 already in F
                      (F("ab", "x"), C("a"), C("b"))):  # F mentions x
        g = after_split(f, c1, c2)
        assert sr(g, c1.with_literal(V.lit("x")))
        assert not sr(f.add(c1), c1)


# 6 -------------------------------------------------------------------------

def _clauses_over(vs):
    for signs in itertools.product((None, True, False), repeat=len(vs)):
        if any(s is not None for s in signs):
            yield Clause(Literal(v, s) for v, s in zip(vs, signs) if s is not None)


def _sources(vs, max_clauses=2):
    cs = list(_clauses_over(vs))
    for m in range(max_clauses + 1):
        yield from itertools.combinations(cs, m)


def _failures(instances):
    bad = []
    for label, inst in instances:
        rep = verify_reduction(inst, hard=True)
        if not rep.ok:
            bad.append((label, [(c.name, c.detail) for c in rep.checks if c.passed is False]))
    return bad


def _horn_instances():
    x, y = V.id("x"), V.id("y")
    for vs in ([x], [x, y]):
        for src in _sources(vs):
            f = Formula(src)
            label = " ".join(V.clause_str(c) for c in src) or "{}"
            yield f"horn_conp {label}", build_horn_conp(f, vs)
            yield f"horn_np {label}", build_horn_np(f, vs)


def _general_instances():
    x, y = V.id("x"), V.id("y")
    names = lambda vs: "{" + ",".join(V.name(v) for v in vs) + "}"
    for a in ([], [x]):
        for e in ([], [y]):
            for src in _sources(a + e):
                body = " ".join(V.clause_str(c) for c in src) or "{}"
                yield f"general_p2 forall {names(a)} exists {names(e)} cnf {body}", build_general_p2(
                    QbfInstance(set(a), set(e), Formula(src), Order.FORALL_EXISTS))
                yield f"general_s2 exists {names(a)} forall {names(e)} dnf {body}", build_general_s2(
                    QbfInstance(set(e), set(a), list(src), Order.EXISTS_FORALL))


@pytest.mark.slow
@acceptance(6, "reductions verified at desk scale")
def test_criterion_6_horn_reductions():
    instances = list(_horn_instances())
    answers = {(lbl.split()[0], i.source_answer) for lbl, i in instances}
    assert len(answers) == 4
    bad = _failures(instances)
    assert not bad, "\n".join(f"{label}: {checks}" for label, checks in bad)


@pytest.mark.slow
@acceptance(6, "reductions verified at desk scale")
def test_criterion_6_general_reductions():
    instances = list(_general_instances())
    answers = {(lbl.split()[0], i.source_answer) for lbl, i in instances}
    assert len(answers) == 4
    bad = _failures(instances)
    assert not bad, "\n".join(f"{label}: {checks}" for label, checks in bad)


# 7 -------------------------------------------------------------------------

@acceptance(7, "additivity over disjoint alphabets")
def test_criterion_7_additivity():
    rng = random.Random(7)
    pairs = 0
    while pairs < 25:
        a = random_formula(rng, nvars=3, max_clauses=3, min_clauses=1)
        b = Formula(Clause(Literal(l.var + 3, l.positive) for l in c)
                    for c in random_formula(rng, nvars=3, max_clauses=3, min_clauses=1))
        if not (satisfiable(a) and satisfiable(b)):
            continue
        ka = frozenset(v for v in range(3) if rng.random() < 0.6)
        kb = frozenset(v for v in range(3, 6) if rng.random() < 0.6)
        sa = min_forget_size(ForgetSpec(a, ka)).size
        sb = min_forget_size(ForgetSpec(b, kb)).size
        assert sa == oracle.min_forget_size(oracle.as_sets(a), ka)
        assert sb == oracle.min_forget_size(oracle.as_sets(b), kb)
        assert min_forget_size(ForgetSpec(a | b, ka | kb)).size == sa + sb
        pairs += 1


# 8 -------------------------------------------------------------------------

@acceptance(8, "CLI invocation is deterministic")
def test_criterion_8_cli():
    cmd = [sys.executable, "-m", "forgetsize", "-machine", "-f", "-minimal", "-forget", "c",
           "a=bc", "c->d", "da"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    assert [r.returncode for r in runs] == [0, 0]
    assert runs[0].stdout == runs[1].stdout and runs[0].stdout


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-rN", "--no-header"]))
