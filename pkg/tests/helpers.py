from hypothesis import strategies as st

from forgetsize.core import Clause, Formula, Literal, Vocabulary
from forgetsize.parser import parse_clause_token, parse_formula

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def vocab() -> Vocabulary:
    """Letters interned in order, so variable ids follow the alphabet."""
    return Vocabulary(LETTERS)


V = vocab()


def F(*tokens) -> Formula:
    return parse_formula(list(tokens), V)


def C(token: str) -> Clause:
    (c,) = parse_clause_token(token, V)
    return c


def L(text: str) -> Literal:
    return V.lit(text)


def ids(names: str) -> frozenset:
    return frozenset(V.id(n) for n in names)


@st.composite
def clauses(draw, nvars=5, max_len=3, min_len=1):
    vs = draw(st.lists(st.integers(0, nvars - 1), min_size=min_len, max_size=max_len, unique=True))
    return Clause(Literal(v, draw(st.booleans())) for v in vs)


@st.composite
def formulas(draw, nvars=5, max_clauses=6, max_len=3, min_clauses=0):
    cs = draw(st.lists(clauses(nvars, max_len), min_size=min_clauses, max_size=max_clauses))
    return Formula(cs)


@st.composite
def formula_and_clause(draw, nvars=5, max_clauses=6, max_len=3):
    f = draw(formulas(nvars, max_clauses, max_len, min_clauses=1))
    c = draw(st.sampled_from(f.sorted()))
    return f, c
