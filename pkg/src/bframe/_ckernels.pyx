# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bit-level kernels; see ``_kernels_py`` for the reference versions."""

import numpy as np

from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def rank(words, Py_ssize_t ncols):
    cdef uint64_t[:, ::1] m = np.array(words, dtype=np.uint64, copy=True, order="C")
    cdef Py_ssize_t nrows = m.shape[0], nw = m.shape[1]
    cdef Py_ssize_t rk = 0, col, w, i, j, piv
    cdef uint64_t bit, tmp
    with nogil:
        for col in range(ncols):
            if rk == nrows:
                break
            w = col >> 6
            bit = (<uint64_t>1) << (col & 63)
            piv = -1
            for i in range(rk, nrows):
                if m[i, w] & bit:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rk:
                for j in range(nw):
                    tmp = m[rk, j]
                    m[rk, j] = m[piv, j]
                    m[piv, j] = tmp
            for i in range(rk + 1, nrows):
                if m[i, w] & bit:
                    for j in range(w, nw):
                        m[i, j] ^= m[rk, j]
            rk += 1
    return rk


def min_weight_span(basis):
    cdef const uint64_t[:, ::1] b = np.ascontiguousarray(basis, dtype=np.uint64)
    cdef Py_ssize_t r = b.shape[0], nw = b.shape[1], j
    if r == 0:
        raise ValueError("empty basis")
    if r > 62:
        raise ValueError("basis too large for exhaustive enumeration")
    cdef uint64_t[::1] cur = np.zeros(nw, dtype=np.uint64)
    cdef unsigned long long g, total = (<unsigned long long>1) << r
    cdef unsigned long long gray = 0, best_combo = 0
    cdef long long best = -1, wt
    cdef int bit
    with nogil:
        for g in range(1, total):
            bit = __builtin_ctzll(g)
            gray ^= (<unsigned long long>1) << bit
            wt = 0
            for j in range(nw):
                cur[j] ^= b[bit, j]
                wt += __builtin_popcountll(cur[j])
            if wt > 0 and (best < 0 or wt < best):
                best = wt
                best_combo = gray
    if best < 0:
        raise ValueError("basis spans the zero space")
    return int(best), int(best_combo)
