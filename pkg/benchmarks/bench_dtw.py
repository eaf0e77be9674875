#!/usr/bin/env python3
"""Benchmark the compiled DTW kernel against the pure-Python fallback.

The all-pairs DTW pass is the pipeline's hot loop: for a default run it
executes once per feature (9x) over the full roster. Usage:

    python benchmarks/bench_dtw.py [--students 292] [--weeks 10]
"""

import argparse
import time

import numpy as np

from srlboard._kernels import dtw_py

try:
    from srlboard._kernels import _dtw as compiled
except ImportError:
    compiled = None


def bench(fn, x, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(x)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--students", type=int, default=292)
    parser.add_argument("--weeks", type=int, default=10)
    args = parser.parse_args()

    rng = np.random.default_rng(42)
    x = np.ascontiguousarray(
        rng.gamma(2.0, 2.0, size=(args.students, args.weeks)), dtype=np.float64
    )
    pairs = args.students * (args.students - 1) // 2
    print(f"all-pairs DTW: {args.students} students x {args.weeks} weeks ({pairs} pairs)")

    t_py = bench(dtw_py.dtw_matrix, x, repeats=1 if args.students > 100 else 3)
    print(f"  pure python : {t_py * 1000:9.1f} ms")
    if compiled is None:
        print("  compiled    : extension not built (pip install -e .)")
        return
    t_c = bench(lambda m: compiled.dtw_matrix(m), x)
    print(f"  compiled    : {t_c * 1000:9.1f} ms")
    print(f"  speedup     : {t_py / t_c:9.1f}x")

    out_py = np.asarray(dtw_py.dtw_matrix(x[:40]))
    out_c = np.asarray(compiled.dtw_matrix(x[:40]))
    assert np.allclose(out_py, out_c, rtol=1e-12, atol=1e-12)
    print("  agreement   : identical on a 40-student cross-check")


if __name__ == "__main__":
    main()
