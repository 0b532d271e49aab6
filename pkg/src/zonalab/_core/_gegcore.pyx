# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gegenbauer recurrence kernels.

Degree-major loops: the three-term recurrence chains in the degree, so the
point axis is the one that vectorizes.  Per-degree coefficients are hoisted
out of the inner loop (no divisions inside), and rows are written
contiguously; this beats the numpy fallback by skipping its per-step
temporaries.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def geg_table(int kmax, double alpha, t):
    """Table of C_m^alpha for m = 0..kmax, shape (kmax+1, len(t))."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tt = \
        np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t n = tt.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((kmax + 1, n))
    cdef Py_ssize_t i
    cdef int m
    cdef double c1, c2, a2 = 2.0 * alpha
    with nogil:
        for i in range(n):
            out[0, i] = 1.0
        if kmax >= 1:
            for i in range(n):
                out[1, i] = a2 * tt[i]
            for m in range(2, kmax + 1):
                c1 = 2.0 * (m + alpha - 1.0) / m
                c2 = (m + 2.0 * alpha - 2.0) / m
                for i in range(n):
                    out[m, i] = c1 * tt[i] * out[m - 1, i] - c2 * out[m - 2, i]
    return out


def geg_eval(int k, double alpha, t):
    """Values of C_k^alpha at the points t, shape (len(t),)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tt = \
        np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t n = tt.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] prev = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cur = np.empty(n)
    cdef Py_ssize_t i
    cdef int m
    cdef double c1, c2, nxt, a2 = 2.0 * alpha
    if k == 0:
        prev[:] = 1.0
        return prev
    with nogil:
        for i in range(n):
            prev[i] = 1.0
            cur[i] = a2 * tt[i]
        for m in range(2, k + 1):
            c1 = 2.0 * (m + alpha - 1.0) / m
            c2 = (m + 2.0 * alpha - 2.0) / m
            for i in range(n):
                nxt = c1 * tt[i] * cur[i] - c2 * prev[i]
                prev[i] = cur[i]
                cur[i] = nxt
    return cur
