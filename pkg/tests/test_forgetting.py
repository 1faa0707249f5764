import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from forgetsize.core import Formula
from forgetsize.errors import ResourceLimitError, VariableEscapeError
from forgetsize.forgetting import (ForgetSpec, consistency_table, expresses_forgetting, forget_all,
                                   forget_by_prime_implicates, forget_one, min_forget_size,
                                   necessary_literals)
from forgetsize.reductions import build_horn_conp
from forgetsize.resolution import prime_implicates
from forgetsize.sat import equivalent

import oracle
from helpers import C, F, L, V, formulas, ids

OUTRESOLVE = F("abx", "-xc", "ac")
KEEP_ABC = ids("abc")


def test_forget_one_examples():
    assert forget_one(OUTRESOLVE, V.id("x")) == F("abc", "ac")
    assert forget_one(F("ab"), V.id("x")) == F("ab")
    assert forget_one(F("ax", "b-x"), V.id("x")) == F("ab")


def test_forget_all_examples():
    assert forget_all(ForgetSpec(OUTRESOLVE, KEEP_ABC)) == F("abc", "ac")
    f = F("ab", "-bc")
    assert forget_all(ForgetSpec(f, f.variables())) == f
    assert forget_all(ForgetSpec(F("x-o", "oq"), ids("xq"))) == F("xq")
    assert forget_all(ForgetSpec(OUTRESOLVE, KEEP_ABC), order="greedy") == F("abc", "ac")


def test_forget_by_prime_implicates_examples():
    assert forget_by_prime_implicates(ForgetSpec(OUTRESOLVE, KEEP_ABC)) == F("ac")
    f = F("a", "-ab", "a-b")
    assert forget_by_prime_implicates(ForgetSpec(f, f.variables())) == prime_implicates(f)
    assert forget_by_prime_implicates(ForgetSpec(F("x"), ())) == Formula()


def test_forget_spec_constructors():
    s = ForgetSpec.forgetting(OUTRESOLVE, ids("x"))
    assert s.keep == KEEP_ABC and s.forgotten() == ids("x")


def test_expresses_forgetting_examples():
    spec = ForgetSpec(OUTRESOLVE, KEEP_ABC)
    assert expresses_forgetting(F("abc", "ac"), spec)
    assert expresses_forgetting(F("ac"), spec)
    assert not expresses_forgetting(F("a"), spec)
    for method in ("table", "sat"):
        assert expresses_forgetting(F("ac"), spec, method=method)
        assert not expresses_forgetting(F("a"), spec, method=method)


def test_expresses_forgetting_errors():
    spec = ForgetSpec(OUTRESOLVE, KEEP_ABC)
    with pytest.raises(VariableEscapeError):
        expresses_forgetting(F("ax"), spec)
    with pytest.raises(ResourceLimitError):
        expresses_forgetting(F("ac"), spec, cap_enum=4)


def test_keep_variables_outside_both_formulas_are_vacuous():
    spec = ForgetSpec(OUTRESOLVE, KEEP_ABC | ids("z"))
    assert expresses_forgetting(F("ac"), spec)


def test_necessary_literals_small():
    got = {r.literal: r.witness for r in necessary_literals(ForgetSpec(F("ab"), ids("ab")))}
    assert got == {L("a"): (L("a"), L("-b")), L("b"): (L("-a"), L("b"))}


def _conp(f):
    inst = build_horn_conp(f, [V.id("x")])
    return inst, {r.literal for r in necessary_literals(inst.spec())}


def _named(inst, lits):
    return {inst.vocab.lit_str(l) for l in lits}


def test_necessary_literals_unsat_source():
    inst, lits = _conp(F("x", "-x"))
    assert {"-x1", "-e1", "a", "-b"} <= _named(inst, lits)
    assert not {"-a", "b"} & _named(inst, lits)


def test_necessary_literals_sat_source():
    inst, lits = _conp(F("x"))
    assert {"-x1", "-e1", "a", "-b", "-a", "b"} <= _named(inst, lits)


def test_min_forget_size_examples():
    r = min_forget_size(ForgetSpec(OUTRESOLVE, KEEP_ABC))
    assert r.size == 2 and r.witnesses == {F("ac")}
    assert min_forget_size(ForgetSpec(F("a", "b"), ids("ab"))).size == 2


def test_min_forget_size_additive_concrete():
    a = F("abx", "-xc", "ac")
    b = F("dy", "-ye", "-d-e")
    ka, kb = ids("abc"), ids("de")
    sa = min_forget_size(ForgetSpec(a, ka)).size
    sb = min_forget_size(ForgetSpec(b, kb)).size
    # frozen from the brute-force oracle
    assert (sa, sb) == (2, 4)
    assert min_forget_size(ForgetSpec(a | b, ka | kb)).size == sa + sb


def test_consistency_table_methods_agree():
    spec = ForgetSpec(OUTRESOLVE, KEEP_ABC)
    order = sorted(KEEP_ABC)
    assert consistency_table(spec, order, "table") == consistency_table(spec, order, "sat")


keeps = st.sets(st.integers(0, 4), max_size=5)


@given(formulas(), keeps)
def test_forgetting_results_match_oracle(f, keep):
    spec = ForgetSpec(f, keep)
    cs = oracle.as_sets(f)
    for g in (forget_all(spec), forget_by_prime_implicates(spec), forget_all(spec, order="greedy")):
        assert expresses_forgetting(g, spec)
        assert oracle.expresses_forgetting(oracle.as_sets(g), cs, keep)


@given(formulas(), keeps, formulas(max_clauses=3))
def test_expresses_forgetting_matches_oracle(f, keep, cand):
    cand = Formula(c for c in cand if c.variables() <= keep)
    spec = ForgetSpec(f, keep)
    want = oracle.expresses_forgetting(oracle.as_sets(cand), oracle.as_sets(f), keep)
    assert expresses_forgetting(cand, spec) == want
    assert expresses_forgetting(cand, spec, method="sat") == want


@given(formulas(), st.integers(0, 4))
def test_forget_one_expresses_forgetting(f, x):
    spec = ForgetSpec(f, f.variables() - {x})
    assert expresses_forgetting(forget_one(f, x), spec)


@given(formulas(), st.integers(0, 4), st.integers(0, 4))
def test_order_independence(f, x, y):
    assume(x != y)
    xy = forget_one(forget_one(f, x), y)
    yx = forget_one(forget_one(f, y), x)
    assert equivalent(xy, yx)


@settings(max_examples=60)
@given(formulas(nvars=4, max_clauses=5), keeps)
def test_necessary_literals_in_every_minimum_witness(f, keep):
    spec = ForgetSpec(f, keep)
    res = min_forget_size(spec)
    for r in necessary_literals(spec):
        for w in res.witnesses:
            assert any(r.literal in c for c in w)


@settings(max_examples=60)
@given(formulas(nvars=4, max_clauses=5), keeps)
def test_min_forget_size_matches_oracle(f, keep):
    assert min_forget_size(ForgetSpec(f, keep)).size == oracle.min_forget_size(oracle.as_sets(f), keep)
