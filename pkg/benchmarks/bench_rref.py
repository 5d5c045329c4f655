"""Benchmark the compiled row-reduction kernel against the numpy fallback.

Runs both backends on the same inputs, checks they return identical
reduced matrices and pivots, and reports median wall-clock times. Two
workload families are measured: random dense matrices over F_p, and the
structured matrices the package actually reduces (Macaulay matrices of a
small polynomial system at increasing degrees).

Usage:
    python3 benchmarks/bench_rref.py [--p 10007] [--reps 5] [--seed 0]

The package-level selection works the same way: `solvedeg.linalg` picks
the compiled kernel when it imports, and SOLVEDEG_PURE_PYTHON=1 in the
environment forces the fallback.
"""

import argparse
import statistics
import time

import numpy as np

from solvedeg import _rref_py
from solvedeg.ffield import PrimeField
from solvedeg.macaulay import build_macaulay
from solvedeg.polyring import PolySystem, TermOrder, parse_poly

try:
    from solvedeg import _rrefc
except ImportError:
    _rrefc = None


def _time_backend(backend, a, p, reps):
    times = []
    result = None
    for _ in range(reps):
        work = a.copy()
        t0 = time.perf_counter()
        pivots = backend.rref_mod_inplace(work, p)
        times.append(time.perf_counter() - t0)
        result = (work[: len(pivots)].copy(), list(pivots))
    return statistics.median(times), result


def _bench_case(label, a, p, reps, rows):
    py_t, py_res = _time_backend(_rref_py, a, p, reps)
    if _rrefc is None:
        rows.append((label, a.shape, py_t, None, None))
        return
    c_t, c_res = _time_backend(_rrefc, a, p, reps)
    if py_res[1] != c_res[1] or not np.array_equal(py_res[0], c_res[0]):
        raise AssertionError(f"backends disagree on {label}")
    rows.append((label, a.shape, py_t, c_t, py_t / c_t if c_t else float("inf")))


def _random_cases(rng, p):
    for m, n in ((80, 120), (200, 300), (400, 600)):
        yield f"random {m}x{n}", rng.integers(0, p, size=(m, n), dtype=np.int64)


def _macaulay_cases(p):
    names = ["x", "y", "z"]
    gens = [
        parse_poly("x^2 + y*z - 1", names, p),
        parse_poly("x*y + z^2 + x", names, p),
        parse_poly("y^2 - x*z + 2", names, p),
    ]
    F = PolySystem(gens, PrimeField(p), names)
    order = TermOrder.degrevlex(3)
    for d in (6, 8, 10):
        m = build_macaulay(F, d, order)
        yield f"macaulay d={d}", np.ascontiguousarray(m.matrix, dtype=np.int64)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=10007, help="prime modulus")
    parser.add_argument("--reps", type=int, default=5, help="repetitions per case")
    parser.add_argument("--seed", type=int, default=0, help="random seed")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    rows = []
    for label, a in _random_cases(rng, args.p):
        _bench_case(label, a, args.p, args.reps, rows)
    for label, a in _macaulay_cases(args.p):
        _bench_case(label, a, args.p, args.reps, rows)

    print(f"rref_mod_inplace over F_{args.p}, median of {args.reps} runs")
    print(f"{'case':<16} {'shape':>10} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for label, shape, py_t, c_t, ratio in rows:
        shape_s = f"{shape[0]}x{shape[1]}"
        if c_t is None:
            print(f"{label:<16} {shape_s:>10} {py_t * 1e3:>10.2f}ms {'absent':>12} {'-':>9}")
        else:
            print(
                f"{label:<16} {shape_s:>10} {py_t * 1e3:>10.2f}ms "
                f"{c_t * 1e3:>10.2f}ms {ratio:>8.1f}x"
            )
    if _rrefc is None:
        print("compiled kernel not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
