import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from forgetsize.core import Clause, Formula, Literal, Vocabulary
from forgetsize.errors import RepairImpossibleError, ResourceLimitError, SplitError
from forgetsize.forgetting import ForgetSpec, expresses_forgetting, forget_one
from forgetsize.redundancy import is_superredundant, superirredundant_clauses
from forgetsize.splitting import analyze_split, make_superirredundant, plan_split, split

from helpers import C, F, V, formula_and_clause

SPLIT = F("abc", "-ad", "-cd", "-dac")
BOTHPARTS = F("abcd", "-ab-cd", "ae", "-e-a-c")
ALREADYBEFORE = F("ab", "-ac", "a-c")


def sr(f, c):
    return is_superredundant(f, c).superredundant


def test_split_example():
    x = V.id("x")
    plan = plan_split(SPLIT, C("abc"), C("a"), fresh=x)
    assert plan.part2 == C("bc")
    g = split(SPLIT, plan)
    assert g == F("ax", "-xbc", "-ad", "-cd", "-dac")
    assert forget_one(g, x) == SPLIT
    assert superirredundant_clauses(g) == g


def test_split_smallest():
    y = V.id("y")
    assert split(F("ab"), plan_split(F("ab"), C("ab"), C("a"), fresh=y)) == F("ay", "-yb")


def test_plan_validation():
    with pytest.raises(SplitError):
        plan_split(SPLIT, C("ab"), C("a"))
    with pytest.raises(SplitError):
        plan_split(SPLIT, C("abc"), C("abc"))
    with pytest.raises(SplitError):
        plan_split(SPLIT, C("abc"), C("a"), fresh=V.id("d"))
    with pytest.raises(SplitError):
        plan_split(SPLIT, C("abc"), C("ad"))


def test_fresh_naming():
    v = Vocabulary("abcd")
    plan = plan_split(SPLIT, C("abc"), C("a"), vocab=v)
    assert v.name(plan.fresh) == "_s1"
    assert plan_split(SPLIT, C("abc"), C("a")).fresh == 4


def test_analyze_examples():
    rep = analyze_split(ALREADYBEFORE, plan_split(ALREADYBEFORE, C("ab"), C("a")))
    assert [(h.part, h.clause, h.reason) for h in rep.precondition_violations] == [
        (1, C("a"), "superredundant-alone")
    ]
    rep = analyze_split(BOTHPARTS, plan_split(BOTHPARTS, C("-ab-cd"), C("-ab")))
    assert rep.collateral == F("abcd")
    assert not rep.precondition_violations
    rep = analyze_split(F("ab"), plan_split(F("ab"), C("ab"), C("a")))
    assert rep.safe


def test_already_present_part_is_flagged():
    f = F("ab", "a", "-bc")
    rep = analyze_split(f, plan_split(f, C("ab"), C("a")))
    assert [(h.part, h.reason) for h in rep.precondition_violations] == [(1, "already-present")]


def test_bothparts_collateral_becomes_superredundant():
    plan = plan_split(BOTHPARTS, C("-ab-cd"), C("-ab"))
    assert not sr(BOTHPARTS, C("abcd"))
    assert sr(plan.result, C("abcd"))


def test_make_superirredundant_examples():
    g, plans = make_superirredundant(SPLIT, C("abc"))
    assert len(plans) == 1 and superirredundant_clauses(g) == g
    g, plans = make_superirredundant(BOTHPARTS, C("-ab-cd"))
    assert [p.target for p in plans] == [C("-ab-cd"), C("abcd")]
    assert superirredundant_clauses(g) == g
    with pytest.raises(RepairImpossibleError):
        make_superirredundant(ALREADYBEFORE, C("ab"))


def test_make_superirredundant_limits():
    with pytest.raises(ResourceLimitError):
        make_superirredundant(BOTHPARTS, C("-ab-cd"), max_splits=1)
    g, plans = make_superirredundant(F("a", "b"), C("a"))
    assert plans == [] and g == F("a", "b")


def test_split_side_conditions():
    """Dropping any side condition of the split guarantee admits a counterexample."""
    x = V.id("x")
    # target not in F
    f, c1, c2 = Formula(), C("ab"), C("a")
    g = f.add(c1.with_literal(V.lit("x")), c2.with_literal(V.lit("-x")))
    assert g == F("abx", "a-x") and sr(g, C("abx"))
    assert not sr(f.add(c1), c1)
    # c1 already in F
    f = F("ab")
    g = f.remove(c1 | c2).add(c1.with_literal(V.lit("x")), c2.with_literal(V.lit("-x")))
    assert sr(g, C("abx"))
    assert not sr(f.add(c1), c1)
    # F mentions x
    f, c1, c2 = F("ab", "x"), C("a"), C("b")
    g = f.remove(c1 | c2).add(C("ax"), C("b-x"))
    assert g == F("x", "ax", "b-x") and sr(g, C("ax"))
    assert not sr(f.add(c1), c1)
    assert x in f.variables()


@st.composite
def split_cases(draw):
    f, c = draw(formula_and_clause(nvars=5, max_clauses=5, max_len=3))
    assume(len(c) >= 2)
    lits = list(c)
    k = draw(st.integers(1, len(lits) - 1))
    chosen = draw(st.permutations(lits))[:k]
    return f, c, Clause(chosen)


@settings(max_examples=300)
@given(split_cases())
def test_split_preserves_forgetting(case):
    f, c, part1 = case
    plan = plan_split(f, c, part1)
    g = split(f, plan)
    assert expresses_forgetting(f, ForgetSpec(g, f.variables()))


@settings(max_examples=300)
@given(split_cases())
def test_no_hazards_means_superirredundant(case):
    f, c, part1 = case
    plan = plan_split(f, c, part1)
    rep = analyze_split(f, plan)
    if rep.precondition_violations:
        return
    g = plan.result
    x = Literal(plan.fresh, True)
    assert not sr(g, plan.part1.with_literal(x))
    assert not sr(g, plan.part2.with_literal(-x))
    # clauses resolving with only one part keep their superirredundancy
    after = superirredundant_clauses(g)
    for d in superirredundant_clauses(f).remove(c):
        if d not in rep.collateral or rep.safe:
            assert d in after
