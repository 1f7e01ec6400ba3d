"""Compiled vs pure-Python DPLL on random 3-SAT near the threshold and on model-finder encodings.

    python3 benchmarks/bench_sat.py [--seed 0] [--repeat 3]

Both backends must return the same status, assignment and step count on every
instance; the script exits non-zero if they disagree.
"""
import argparse
import random
import statistics
import sys
import time

from whyq.models import sat
from whyq.models.finder import DomainAssignment, _Encoder, _functions_used
from whyq.parser import parse_inline
from whyq.prover import clausify_problem


def random_3sat(rng, n, ratio):
    return [[v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), 3)]
            for _ in range(int(n * ratio))]


def finder_encoding(size):
    """Ground clauses for a commutative binary operation with an identity and inverses."""
    th, _ = parse_inline("{forall x:U, y:U. x*y = y*x; forall x:U. x*e = x; "
                         "forall x:U. exists y:U. x*y = e; forall x:U, y:U, z:U. (x*y)*z = x*(y*z)}")
    problem = clausify_problem([(a.label, a.formula) for a in th.axioms], th.signature, add_equality=False)
    enc = _Encoder(problem.signature, DomainAssignment.uniform(problem.signature, size), 10 ** 7)
    names = _functions_used(problem.clauses, problem.signature)
    enc.function_tables(names)
    enc.break_constant_symmetry(names)
    for c in problem.clauses:
        enc.ground(c)
    return enc.clauses, len(enc.ids)


def timed(solve, clauses, n, repeat):
    times, result = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        result = solve(clauses, n)
        times.append(time.perf_counter() - t)
    return statistics.median(times), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if sat.compiled_solve is None:
        print("compiled kernel not built; run `python3 setup.py build_ext --inplace` first")
        return 1
    rng = random.Random(args.seed)
    cases = [(f"3sat n={n} m={int(n * 4.26)}", random_3sat(rng, n, 4.26), n) for n in (50, 75, 100, 110)]
    for size in (3, 4, 5):
        clauses, n = finder_encoding(size)
        cases.append((f"group encoding size {size} ({len(clauses)} clauses)", clauses, n))
    print(f"{'instance':44} {'python s':>10} {'compiled s':>11} {'speedup':>8}  status steps")
    bad = 0
    for name, clauses, n in cases:
        tp, rp = timed(sat.python_solve, clauses, n, args.repeat)
        tc, rc = timed(sat.compiled_solve, clauses, n, args.repeat)
        same = rp == rc
        bad += not same
        print(f"{name:44} {tp:10.4f} {tc:11.4f} {tp / tc:8.1f}x  {rc[0]:>6} {rc[2]}{'' if same else '  MISMATCH'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
