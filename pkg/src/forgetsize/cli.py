"""Command-line front end.

    forgetsize -f -minimal -forget c 'a=bc' 'c->d' 'da'
    forgetsize -t problem.txt -machine
    forgetsize -reduction horn_conp -verify x -x

Flags come first; everything after the first clause token (or after
``--``) is a clause token.  Exit status: 0 ok, 2 parse error, 3 resource
limit, 4 expectation mismatch or failed verification.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional, TextIO

from .core import Clause, Formula, Vocabulary
from .errors import ForgetSizeError, ParseError, ResourceLimitError, TautologyError
from .forgetting import DEFAULT_ENUM_CAP, ForgetSpec, forget_by_prime_implicates
from .minimization import is_minimal, minimize
from .parser import (ProblemFile, _lex_literals, load_problem, parse_formula, parse_vars,
                     print_clause, print_formula, print_vars, token_names)
from .reductions import BUILDERS, Kind, Order, QbfInstance, verify_reduction
from .redundancy import redundant_clauses, superirredundant_clauses
from .resolution import DEFAULT_CLOSURE_CAP, resolution_closure
from .sat import equivalent

EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_MISMATCH = 0, 2, 3, 4

SECTIONS = ("closure", "prime", "redundant", "superredundant", "minimal", "forget", "min-forget-size")


@dataclass
class RunConfig:
    tokens: list = field(default_factory=list)
    problem: Optional[str] = None
    minimal: bool = False
    forget: Optional[str] = None
    keep: Optional[str] = None
    bound: Optional[int] = None
    sections: Optional[list] = None
    machine: bool = False
    cap_closure: int = DEFAULT_CLOSURE_CAP
    cap_enum: int = DEFAULT_ENUM_CAP
    reduction: Optional[str] = None
    outer: Optional[str] = None
    verify: bool = False
    hard: bool = False


class StageError(Exception):
    def __init__(self, stage: str, exc: Exception):
        self.stage = stage
        self.exc = exc
        super().__init__(f"{stage}: {exc}")


def _stage(name, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except (ForgetSizeError, ValueError) as exc:
        raise StageError(name, exc) from exc


class Out:
    def __init__(self, stream: TextIO, machine: bool):
        self.stream = stream
        self.machine = machine

    def emit(self, section: str, payload: str, label: Optional[str] = None) -> None:
        if self.machine:
            self.stream.write(f"{section}\t{payload}\n")
        else:
            self.stream.write(f"{label or section}: {payload}\n")


def _formula_text(f: Formula, vocab: Vocabulary) -> str:
    return print_formula(f, vocab) if len(f) else "(empty)"


def _load(cfg: RunConfig) -> ProblemFile:
    if cfg.problem:
        prob = load_problem(cfg.problem)
        vocab = prob.vocab
        allow_long = True
    else:
        if not cfg.tokens:
            raise ParseError("no clause tokens given")
        vocab = Vocabulary()
        allow_long = False
        names = [n for t in cfg.tokens for n in token_names(t)]
        for opt in (cfg.forget, cfg.keep):
            if opt:
                names += token_names(opt)
        vocab.intern_all(names)
        try:
            f = parse_formula(cfg.tokens, vocab, allow_long=False)
        except TautologyError as exc:
            raise ParseError(str(exc)) from None
        prob = ProblemFile(f, vocab)
    if cfg.forget is not None and cfg.keep is not None:
        raise ParseError("-forget and -keep are mutually exclusive")
    if cfg.forget is not None:
        prob.forget_vars = parse_vars(cfg.forget, vocab, allow_long)
        prob.keep_vars = None
    if cfg.keep is not None:
        prob.keep_vars = parse_vars(cfg.keep, vocab, allow_long)
        prob.forget_vars = None
    if cfg.minimal:
        prob.want_minimal = True
    if cfg.bound is not None:
        prob.bound = cfg.bound
    return prob


def _selected(cfg: RunConfig, prob: ProblemFile) -> list[str]:
    if cfg.sections:
        return [s for s in SECTIONS if s in cfg.sections]
    out = ["closure", "prime", "redundant", "superredundant"]
    if prob.want_minimal:
        out.append("minimal")
    if prob.keep_vars is not None or prob.forget_vars is not None or prob.bound is not None:
        out += ["forget", "min-forget-size"]
    return out


def run(cfg: RunConfig, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if cfg.reduction:
            return _run_reduction(cfg, stdout)
        return _run(cfg, stdout)
    except StageError as err:
        stderr.write(f"error in stage {err.stage}: {err.exc}\n")
        if isinstance(err.exc, ParseError) or isinstance(err.exc, TautologyError):
            return EXIT_PARSE
        if isinstance(err.exc, ResourceLimitError):
            return EXIT_RESOURCE
        return 1
    except (ParseError, TautologyError) as exc:
        stderr.write(f"error in stage parse: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        stderr.write(f"error in stage input: {exc}\n")
        return EXIT_PARSE


def _run(cfg: RunConfig, stdout: TextIO) -> int:
    prob = _stage("parse", _load, cfg)
    vocab, f = prob.vocab, prob.formula
    out = Out(stdout, cfg.machine)
    sections = _selected(cfg, prob)
    got: dict[str, object] = {}

    closure = None
    if "closure" in sections or "prime" in sections:
        closure = _stage("closure", resolution_closure, f, cfg.cap_closure)
        got["closure"] = closure.closure
        got["prime"] = closure.prime
    if "closure" in sections:
        out.emit("closure", _formula_text(closure.closure, vocab), "resolution closure")
    if "prime" in sections:
        out.emit("prime", _formula_text(closure.prime, vocab), "prime implicates")
    if "redundant" in sections:
        red = _stage("redundancy", redundant_clauses, f)
        got["redundant"] = red
        out.emit("redundant", _formula_text(red, vocab), "redundant clauses")
    if "superredundant" in sections:
        irr = _stage("redundancy", superirredundant_clauses, f)
        got["superredundant"] = f - irr
        got["superirredundant"] = irr
        out.emit("superredundant", _formula_text(f - irr, vocab), "superredundant clauses")
    if "minimal" in sections:
        pool = closure.prime if closure is not None else None
        res = _stage("minimize", minimize, f, closure_cap=cfg.cap_closure, pool=pool)
        got["minimal"] = res.witnesses
        got["minimal-size"] = res.min_size
        out.emit("minimal-size", str(res.min_size), "minimal size")
        for w in res.witness_list:
            out.emit("minimal", _formula_text(w, vocab), "minimal formula")
    if "forget" in sections or "min-forget-size" in sections:
        spec = ForgetSpec(f, prob.keep())
        g = _stage("forget", forget_by_prime_implicates, spec, cfg.cap_closure)
        got["forget"] = g
        if "forget" in sections:
            out.emit("forget-vars", print_vars(spec.forgotten(), vocab) or "(none)", "forgotten variables")
            out.emit("forget", _formula_text(g, vocab), "forgetting")
        if "min-forget-size" in sections or prob.want_minimal:
            res = _stage("min-forget-size", minimize, g, closure_cap=cfg.cap_closure, pool=g)
            got["min-forget-size"] = res.min_size
            got["forget-minimal"] = res.witnesses
            if prob.want_minimal:
                for w in res.witness_list:
                    out.emit("forget-minimal", _formula_text(w, vocab), "minimal forgetting")
            out.emit("min-forget-size", str(res.min_size), "minimal size after forgetting")
            if prob.bound is not None:
                verdict = "within" if res.min_size <= prob.bound else "exceeds"
                out.emit("bound", f"{prob.bound}\t{verdict}" if cfg.machine else f"{prob.bound} ({verdict})")
    return _check_expectations(prob, got, out)


def _compare(name: str, want, got, prob: ProblemFile) -> Optional[bool]:
    f = prob.formula
    if name == "size":
        return want == f.size
    if name == "is-minimal":
        return want == _stage("minimize", is_minimal, f)
    if name in ("minimal", "forget-minimal"):
        if got is None:
            return None
        wants = [w for n, w in prob.expectations if n == name]
        return set(wants) == set(got)
    if name == "forget":
        return None if got is None else equivalent(want, got)
    if got is None:
        return None
    return want == got


def _check_expectations(prob: ProblemFile, got: dict, out: Out) -> int:
    status = EXIT_OK
    seen = set()
    for name, want in prob.expectations:
        if name in seen and name in ("minimal", "forget-minimal"):
            continue
        seen.add(name)
        verdict = _compare(name, want, got.get(name), prob)
        if verdict is None:
            text = "not computed"
            status = EXIT_MISMATCH
        else:
            text = "ok" if verdict else "mismatch"
            if not verdict:
                status = EXIT_MISMATCH
        out.emit("expect", f"{name}\t{text}" if out.machine else f"{name} {text}", "expectation")
    return status


def _parse_terms(tokens: list[str], vocab: Vocabulary) -> list[Clause]:
    terms = []
    for t in tokens:
        if "->" in t or "=" in t:
            raise ParseError(f"term {t!r}: a DNF term is a plain literal string")
        try:
            terms.append(Clause(_lex_literals(t, 0, vocab, False)))
        except TautologyError as exc:
            raise ParseError(f"term {t!r} is contradictory") from exc
    return terms


def _answer_word(kind: Kind, answer: bool) -> str:
    if kind in (Kind.HORN_CONP, Kind.HORN_NP):
        return "satisfiable" if answer else "unsatisfiable"
    return "valid" if answer else "invalid"


def _run_reduction(cfg: RunConfig, stdout: TextIO) -> int:
    kind = _stage("parse", Kind, cfg.reduction)
    vocab = Vocabulary()
    tokens = cfg.tokens
    _stage("parse", vocab.intern_all, [n for t in tokens for n in token_names(t)]
           + (token_names(cfg.outer) if cfg.outer else []))
    if kind in (Kind.HORN_CONP, Kind.HORN_NP):
        src = _stage("parse", parse_formula, tokens, vocab, False)
        inst = _stage("reduction", BUILDERS[kind], src, vocab_ids(vocab))
        source_text = print_formula(src, vocab)
    else:
        outer = _stage("parse", parse_vars, cfg.outer or "", vocab, False)
        if kind is Kind.GENERAL_P2:
            matrix = _stage("parse", parse_formula, tokens, vocab, False)
            q = QbfInstance(outer, set(vocab_ids(vocab)) - outer, matrix, Order.FORALL_EXISTS)
            source_text = print_formula(matrix, vocab)
        else:
            terms = _stage("parse", _parse_terms, tokens, vocab)
            q = QbfInstance(set(vocab_ids(vocab)) - outer, outer, terms, Order.EXISTS_FORALL)
            source_text = " ".join(print_clause(t, vocab) for t in terms)
        inst = _stage("reduction", BUILDERS[kind], q)
    iv = inst.vocab
    out = Out(stdout, cfg.machine)
    answer = _answer_word(kind, inst.source_answer)
    if cfg.machine:
        out.emit("reduction", kind.value)
        out.emit("source", source_text)
        if kind in (Kind.GENERAL_P2, Kind.GENERAL_S2):
            out.emit("outer", print_vars(outer, vocab))
        out.emit("source-answer", answer)
        out.emit("k", str(inst.bound_k))
        out.emit("keep", print_vars(inst.keep, iv))
        out.emit("formula", print_formula(inst.formula_A, iv))
    else:
        w = stdout.write
        w(f"# reduction: {kind.value}\n# source: {source_text}\n")
        if kind in (Kind.GENERAL_P2, Kind.GENERAL_S2):
            w(f"# outer block: {print_vars(outer, vocab) or '(none)'}\n")
        renamed = ", ".join(f"{vocab.name(v)}={iv.name(i)}" for v, i in sorted(inst.source_map.items()))
        w(f"# variables: {renamed or '(none)'}\n# source-answer: {answer}\n")
        w(f"bound: {inst.bound_k}\nkeep: {print_vars(inst.keep, iv)}\n")
        w(f"formula: {print_formula(inst.formula_A, iv)}\n")
    status = EXIT_OK
    if cfg.verify:
        report = verify_reduction(inst, hard=cfg.hard, cap_enum=cfg.cap_enum)
        for c in report.checks:
            verdict = {True: "pass", False: "fail", None: "skip"}[c.passed]
            if cfg.machine:
                out.emit("check", f"{c.name}\t{verdict}\t{c.detail}")
            else:
                stdout.write(f"# check {c.name}: {verdict} ({c.detail})\n")
            if c.passed is False:
                status = EXIT_RESOURCE if c.detail.startswith("resource limit") else EXIT_MISMATCH
    return status


def vocab_ids(vocab: Vocabulary) -> list[int]:
    return list(range(len(vocab)))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="forgetsize",
        description="Resolution closure, superredundancy, minimization and forgetting for CNF formulas.",
        allow_abbrev=False,
    )
    p.add_argument("-f", action="store_true", help="read clause tokens from the command line (default)")
    p.add_argument("-t", metavar="FILE", help="read a problem file")
    p.add_argument("-minimal", action="store_true", help="also print the minimal equivalent formulas")
    p.add_argument("-forget", metavar="VARS", help="variables to forget")
    p.add_argument("-keep", metavar="VARS", help="variables to keep (forget the others)")
    p.add_argument("-bound", metavar="K", type=int, help="compare the size after forgetting with K")
    p.add_argument("-report", metavar="LIST",
                   help="comma-separated sections: " + ",".join(SECTIONS))
    p.add_argument("-reduction", metavar="KIND", choices=[k.value for k in Kind],
                   help="build a reduction instance from the tokens")
    p.add_argument("-outer", metavar="VARS",
                   help="outer quantifier block of the QBF source (general_p2: forall, general_s2: exists)")
    p.add_argument("-verify", action="store_true", help="verify the reduction instance")
    p.add_argument("-hard", action="store_true", help="with -verify, also run the exhaustive size check")
    p.add_argument("-machine", action="store_true", help="tab-separated section<TAB>payload output")
    p.add_argument("-cap-closure", metavar="N", type=int, default=DEFAULT_CLOSURE_CAP, dest="cap_closure")
    p.add_argument("-cap-enum", metavar="N", type=int, default=DEFAULT_ENUM_CAP, dest="cap_enum")
    return p


def _split_argv(argv: list[str]) -> tuple[list[str], list[str]]:
    """Separate leading flags from clause tokens (which may start with '-')."""
    takes_value = {"-t", "-forget", "-keep", "-bound", "-report", "-reduction", "-outer",
                   "-cap-closure", "-cap-enum"}
    flags = {"-f", "-minimal", "-verify", "-hard", "-machine", "-h", "--help"}
    i = 0
    while i < len(argv):
        a = argv[i]
        if a == "--":
            return argv[:i], argv[i + 1:]
        if a in takes_value:
            i += 2
        elif a in flags:
            i += 1
        else:
            break
    return argv[:i], argv[i:]


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    head, tokens = _split_argv(argv)
    args = build_parser().parse_args(head)
    sections = None
    if args.report:
        sections = [s.strip() for s in args.report.split(",") if s.strip()]
        bad = [s for s in sections if s not in SECTIONS]
        if bad:
            sys.stderr.write(f"error in stage parse: unknown report section(s) {', '.join(bad)}\n")
            return EXIT_PARSE
    cfg = RunConfig(
        tokens=tokens, problem=args.t, minimal=args.minimal, forget=args.forget, keep=args.keep,
        bound=args.bound, sections=sections, machine=args.machine, cap_closure=args.cap_closure,
        cap_enum=args.cap_enum, reduction=args.reduction, outer=args.outer, verify=args.verify,
        hard=args.hard,
    )
    if cfg.problem and cfg.tokens:
        sys.stderr.write("error in stage parse: give either -t FILE or clause tokens, not both\n")
        return EXIT_PARSE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
