"""Pure-Python fallback for the DTW kernels.

Same contract as the compiled ``_dtw`` extension; used when the extension
is unavailable or when SRLBOARD_PURE_PYTHON is set. Noticeably slower on
full rosters (see benchmarks/bench_dtw.py).
"""

import numpy as np

_INF = float("inf")


def dtw(a, b):
    """DTW distance between two non-empty 1-D float64 arrays."""
    n, m = len(a), len(b)
    work = [0.0] + [_INF] * m
    for i in range(n):
        prev_diag = work[0]
        work[0] = _INF
        ai = a[i]
        for j in range(1, m + 1):
            cost = ai - b[j - 1]
            if cost < 0:
                cost = -cost
            best = work[j]
            if work[j - 1] < best:
                best = work[j - 1]
            if prev_diag < best:
                best = prev_diag
            prev_diag = work[j]
            work[j] = cost + best
    return work[m]


def dtw_matrix(x):
    """Symmetric all-pairs DTW over rows of a 2-D float64 array."""
    n = x.shape[0]
    out = np.zeros((n, n), dtype=np.float64)
    rows = [list(row) for row in x]
    for i in range(n):
        for j in range(i + 1, n):
            d = dtw(rows[i], rows[j])
            out[i, j] = d
            out[j, i] = d
    return out
