"""Compare the compiled kernels with the pure-Python fallback.

    python3 bench/bench_kernels.py [--repeat N] [--seed S]

Each row times one workload under both backends (best of N) and prints
the speedup.  The end-to-end rows run library calls with the compiled
module switched off by hand, so they measure what a user would see.
"""
import argparse
import random
import sys
import timeit
from contextlib import contextmanager

from forgetsize import kernels
from forgetsize.core import Clause, Formula, Literal
from forgetsize.forgetting import min_forget_size
from forgetsize.kernels import _pure
from forgetsize.minimization import minimize
from forgetsize.reductions import build_horn_np


def random_masks(rng, nvars, nclauses, width):
    out = []
    for _ in range(nclauses):
        p = n = 0
        for v in rng.sample(range(nvars), width):
            if rng.random() < 0.5:
                p |= 1 << v
            else:
                n |= 1 << v
        out.append((p, n))
    return out


def random_formula(rng, nvars, nclauses, width):
    return Formula(Clause(Literal(v, rng.random() < 0.5) for v in rng.sample(range(nvars), width))
                   for _ in range(nclauses))


@contextmanager
def pure_backend():
    saved = kernels._native
    kernels._native = None
    try:
        yield
    finally:
        kernels._native = saved


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    native = kernels._native
    if native is None:
        print("compiled kernels are not available; build them with "
              "`pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    rng = random.Random(args.seed)
    sat_cases = [random_masks(rng, 40, 170, 3) for _ in range(20)]
    horn_cases = [[(p & -p, n | (p & ~(p & -p))) for p, n in random_masks(rng, 60, 200, 3)]
                  for _ in range(20)]
    closure_cases = [random_masks(rng, 8, 12, 3) for _ in range(10)]
    minimal_cases = [_pure.closure(c, 100_000)[0] for c in closure_cases]
    min_formulas = [random_formula(rng, 6, 9, 3) for _ in range(10)]
    np_inst = build_horn_np(Formula([Clause([Literal(0, True)])]), [0])

    kernel_rows = [
        ("sat (40 vars, 170 clauses) x20", "sat", lambda m: [m.sat(c) for c in sat_cases]),
        ("horn_sat (60 vars, 200 clauses) x20", "horn_sat", lambda m: [m.horn_sat(c) for c in horn_cases]),
        ("closure (8 vars, 12 clauses) x10", "closure", lambda m: [m.closure(c, 100_000) for c in closure_cases]),
        ("minimal (closure output) x10", "minimal", lambda m: [m.minimal(c) for c in minimal_cases]),
    ]
    print(f"{'workload':44} {'native s':>10} {'python s':>10} {'speedup':>8}")
    for label, _, fn in kernel_rows:
        tn = best(lambda: fn(native), args.repeat)
        tp = best(lambda: fn(_pure), args.repeat)
        print(f"{label:44} {tn:10.4f} {tp:10.4f} {tp / tn:7.1f}x")

    e2e_rows = [
        ("minimize (6 vars, 9 clauses) x10", lambda: [minimize(f) for f in min_formulas]),
        ("min_forget_size horn_np n=1", lambda: min_forget_size(np_inst.spec())),
    ]
    for label, fn in e2e_rows:
        tn = best(fn, args.repeat)
        with pure_backend():
            tp = best(fn, args.repeat)
        print(f"{label:44} {tn:10.4f} {tp:10.4f} {tp / tn:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
