"""Compact clause syntax and the problem-file format.

A clause token is a run of literals (``da`` is d or a), an implication
``lhs->rhs`` (one clause, lhs literals negated) or a definition ``l=rhs``
(l equivalent to the conjunction of rhs).  A literal is an optional ``-``
followed by a single letter; longer names are written in braces, ``{e1}``.
``[]`` is the empty clause.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from .core import Clause, Formula, Literal, Vocabulary
from .errors import ParseError, TautologyError

_NAME_RE = re.compile(r"[A-Za-z0-9_']+")


def _lex_literals(text: str, offset: int, vocab: Vocabulary, allow_long: bool) -> list[Literal]:
    lits = []
    i = 0
    while i < len(text):
        start = i
        positive = True
        if text[i] == "-":
            positive = False
            i += 1
            if i >= len(text):
                raise ParseError("'-' must be followed by a variable", offset + start)
        ch = text[i]
        if ch == "{":
            close = text.find("}", i)
            if close < 0:
                raise ParseError("unterminated '{'", offset + i)
            name = text[i + 1:close]
            if not _NAME_RE.fullmatch(name):
                raise ParseError(f"bad variable name {name!r}", offset + i)
            if len(name) > 1 and not allow_long:
                raise ParseError(f"variable {name!r}: only single letters are allowed here", offset + i)
            i = close + 1
        elif ch.isascii() and ch.isalpha():
            name = ch
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", offset + i)
        lits.append(Literal(vocab.intern(name), positive))
    return lits


def _make_clause(lits: Iterable[Literal], token: str) -> Clause:
    try:
        return Clause(lits)
    except TautologyError as exc:
        raise TautologyError(f"token {token!r} yields a tautology") from exc


def parse_clause_token(token: str, vocab: Optional[Vocabulary] = None,
                       allow_long: bool = True) -> Formula:
    """Parse one clause token into the (one or more) clauses it stands for."""
    if vocab is None:
        vocab = Vocabulary()
    if token == "[]":
        return Formula([Clause()])
    if not token:
        raise ParseError("empty clause token", 0)
    if "->" in token:
        k = token.index("->")
        lhs = _lex_literals(token[:k], 0, vocab, allow_long)
        rhs = _lex_literals(token[k + 2:], k + 2, vocab, allow_long)
        if not lhs and not rhs:
            raise ParseError("empty implication", k)
        return Formula([_make_clause([-l for l in lhs] + rhs, token)])
    if "=" in token:
        k = token.index("=")
        lhs = _lex_literals(token[:k], 0, vocab, allow_long)
        if len(lhs) != 1:
            raise ParseError("left side of '=' must be a single literal", 0)
        rhs = _lex_literals(token[k + 1:], k + 1, vocab, allow_long)
        if not rhs:
            raise ParseError("empty right side of '='", k + 1)
        (l,) = lhs
        out = [_make_clause([-l, r], token) for r in rhs]
        out.append(_make_clause([-r for r in rhs] + [l], token))
        return Formula(out)
    return Formula([_make_clause(_lex_literals(token, 0, vocab, allow_long), token)])


def token_names(token: str) -> list[str]:
    """Variable names mentioned by a token, without interning them."""
    names = []
    for m in re.finditer(r"\{([^{}]*)\}|([A-Za-z])", token):
        names.append(m.group(1) if m.group(1) is not None else m.group(2))
    return names


def parse_formula(tokens: Union[str, Iterable[str]], vocab: Optional[Vocabulary] = None,
                  allow_long: bool = True) -> Formula:
    """Parse whitespace-separated clause tokens into one formula.

    Names not yet in ``vocab`` are interned in sorted order first, so that
    canonical printing is alphabetical for fresh vocabularies.
    """
    if vocab is None:
        vocab = Vocabulary()
    if isinstance(tokens, str):
        tokens = tokens.split()
    tokens = list(tokens)
    vocab.intern_all(n for t in tokens for n in token_names(t) if n)
    clauses: set[Clause] = set()
    for t in tokens:
        clauses |= parse_clause_token(t, vocab, allow_long).clauses
    return Formula(clauses)


def parse_vars(text: Union[str, Iterable[str]], vocab: Vocabulary,
               allow_long: bool = True) -> frozenset[int]:
    """Variable list: letters (``cd`` is c and d), ``{name}``, separated freely."""
    if isinstance(text, str):
        text = text.replace(",", " ").split()
    out = set()
    for t in text:
        for lit in _lex_literals(t, 0, vocab, allow_long):
            if not lit.positive:
                raise ParseError(f"negated literal in variable list {t!r}")
            out.add(lit.var)
    return frozenset(out)


def _name(vocab: Vocabulary, v: int) -> str:
    name = vocab.name(v)
    return name if len(name) == 1 and name.isalpha() else "{" + name + "}"


def print_clause(c: Clause, vocab: Vocabulary) -> str:
    if not c.pos and not c.neg:
        return "[]"
    return "".join(("" if l.positive else "-") + _name(vocab, l.var) for l in c)


def print_formula(f: Formula, vocab: Vocabulary) -> str:
    return " ".join(print_clause(c, vocab) for c in f)


def print_vars(vs: Iterable[int], vocab: Vocabulary) -> str:
    return " ".join(_name(vocab, v) for v in sorted(vs))


ExpectValue = Union[Formula, int, bool]


@dataclass
class ProblemFile:
    formula: Formula
    vocab: Vocabulary
    keep_vars: Optional[frozenset[int]] = None
    forget_vars: Optional[frozenset[int]] = None
    want_minimal: bool = False
    bound: Optional[int] = None
    expectations: list[tuple[str, ExpectValue]] = field(default_factory=list)
    path: Optional[str] = None

    def keep(self) -> frozenset[int]:
        """Keep-set implied by the directives (all variables if none given)."""
        if self.keep_vars is not None:
            return self.keep_vars
        if self.forget_vars is not None:
            return self.formula.variables() - self.forget_vars
        return self.formula.variables()


_KEYS = ("formula", "forget", "keep", "minimal", "bound")


def _parse_value(raw: str, vocab: Vocabulary, lineno: int) -> ExpectValue:
    v = raw.strip()
    if v.isdigit():
        return int(v)
    if v.lower() in ("yes", "true", "no", "false"):
        return v.lower() in ("yes", "true")
    try:
        return parse_formula(v.split(), vocab)
    except ParseError as exc:
        raise ParseError(exc.message, exc.position, lineno) from None


def parse_problem(text: str, path: Optional[str] = None) -> ProblemFile:
    entries: list[tuple[int, str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {line!r}", line=lineno)
        key, value = line.split(":", 1)
        key = key.strip().lower()
        if key not in _KEYS and not key.startswith("expect-"):
            raise ParseError(f"unknown key {key!r}", line=lineno)
        entries.append((lineno, key, value.strip()))
    if not any(k == "formula" for _, k, _ in entries):
        raise ParseError("missing 'formula:' line", line=max((n for n, _, _ in entries), default=1))

    vocab = Vocabulary()
    vocab.intern_all(
        n
        for _, key, value in entries
        if key in ("formula", "forget", "keep") or key.startswith("expect-")
        for n in token_names(value)
        if n
    )
    clauses: set[Clause] = set()
    prob = ProblemFile(Formula(), vocab, path=path)
    for lineno, key, value in entries:
        try:
            if key == "formula":
                clauses |= parse_formula(value.split(), vocab).clauses
            elif key in ("forget", "keep"):
                vs = parse_vars(value, vocab)
                if key == "forget":
                    prob.forget_vars = (prob.forget_vars or frozenset()) | vs
                else:
                    prob.keep_vars = (prob.keep_vars or frozenset()) | vs
            elif key == "minimal":
                if value.lower() not in ("yes", "no", "true", "false"):
                    raise ParseError("minimal: expects yes or no")
                prob.want_minimal = value.lower() in ("yes", "true")
            elif key == "bound":
                if not value.isdigit():
                    raise ParseError("bound: expects a non-negative integer")
                prob.bound = int(value)
            else:
                prob.expectations.append((key[len("expect-"):], _parse_value(value, vocab, lineno)))
        except ParseError as exc:
            raise ParseError(exc.message, exc.position, lineno) from None
        except TautologyError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if prob.keep_vars is not None and prob.forget_vars is not None:
            raise ParseError("'keep:' and 'forget:' are mutually exclusive", line=lineno)
    prob.formula = Formula(clauses)
    return prob


def load_problem(path: Union[str, Path]) -> ProblemFile:
    text = Path(path).read_text(encoding="utf-8")
    return parse_problem(text, str(path))
