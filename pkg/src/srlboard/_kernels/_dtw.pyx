# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled dynamic-time-warping kernels.

The inner DP loop dominates pipeline runtime (all-pairs DTW over the
student roster, once per feature), so it lives here. A pure-Python twin
with the same surface is in ``dtw_py``; the package selects one at import.
"""

import numpy as np

from libc.math cimport INFINITY

cimport numpy as cnp

cnp.import_array()


cdef double _dtw_cost(const double[::1] a, const double[::1] b, double[::1] work) nogil:
    # Rolling single-row DP; work must have len(b) + 1 slots.
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    cdef Py_ssize_t i, j
    cdef double cost, prev_diag, tmp, best

    work[0] = 0.0
    for j in range(1, m + 1):
        work[j] = INFINITY
    for i in range(1, n + 1):
        prev_diag = work[0]
        work[0] = INFINITY
        for j in range(1, m + 1):
            cost = a[i - 1] - b[j - 1]
            if cost < 0:
                cost = -cost
            best = work[j]          # insert (up)
            tmp = work[j - 1]       # delete (left)
            if tmp < best:
                best = tmp
            if prev_diag < best:    # match (diagonal)
                best = prev_diag
            prev_diag = work[j]
            work[j] = cost + best
    return work[m]


def dtw(const double[::1] a, const double[::1] b):
    """DTW distance between two non-empty 1-D float64 arrays."""
    cdef double[::1] work = np.empty(b.shape[0] + 1, dtype=np.float64)
    cdef double out
    with nogil:
        out = _dtw_cost(a, b, work)
    return out


def dtw_matrix(const double[:, ::1] x):
    """Symmetric all-pairs DTW over rows of a 2-D float64 array."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t w = x.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] om = out
    cdef double[::1] work = np.empty(w + 1, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double d
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                d = _dtw_cost(x[i], x[j], work)
                om[i, j] = d
                om[j, i] = d
    return out
