# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pool-adjacent-violators kernels."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef Py_ssize_t _pav_into(const double[::1] z, double[::1] out, double[::1] sums,
                          Py_ssize_t[::1] counts) noexcept nogil:
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t top = -1
    cdef Py_ssize_t i, j, k
    cdef double s
    cdef Py_ssize_t c
    for i in range(n):
        top += 1
        sums[top] = z[i]
        counts[top] = 1
        # merge while the block mean increases from left to right
        while top > 0 and sums[top - 1] * counts[top] < sums[top] * counts[top - 1]:
            sums[top - 1] += sums[top]
            counts[top - 1] += counts[top]
            top -= 1
    k = 0
    for j in range(top + 1):
        s = sums[j] / counts[j]
        c = counts[j]
        for i in range(c):
            out[k] = s
            k += 1
    return top + 1


def pav_nonincreasing(z):
    cdef const double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t n = zv.shape[0]
    out = np.empty(n, dtype=np.float64)
    sums = np.empty(n, dtype=np.float64)
    counts = np.empty(n, dtype=np.intp)
    cdef double[::1] ov = out
    cdef double[::1] sv = sums
    cdef Py_ssize_t[::1] cv = counts
    with nogil:
        _pav_into(zv, ov, sv, cv)
    return out


def shrink_sorted(a, w):
    """Prox of the sorted-l1 norm restricted to nonincreasing nonnegative ``a``."""
    cdef const double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0]
    cdef Py_ssize_t i
    z = np.empty(n, dtype=np.float64)
    out = np.empty(n, dtype=np.float64)
    sums = np.empty(n, dtype=np.float64)
    counts = np.empty(n, dtype=np.intp)
    cdef double[::1] zv = z
    cdef double[::1] ov = out
    cdef double[::1] sv = sums
    cdef Py_ssize_t[::1] cv = counts
    with nogil:
        for i in range(n):
            zv[i] = av[i] - wv[i]
        _pav_into(zv, ov, sv, cv)
        for i in range(n):
            if ov[i] < 0.0:
                ov[i] = 0.0
    return out
