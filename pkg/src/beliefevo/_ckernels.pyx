# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled power-set kernels.

Same contract as ``_pykernels``: arrays are C-contiguous float64 of shape
(batch, 2**n) and are modified in place.
"""
import numpy as np

NAME = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount(Py_ssize_t x) noexcept nogil:
    return __builtin_popcountll(<unsigned long long>x)


def subset_sum(double[:, ::1] a, int n):
    cdef Py_ssize_t r, f, bit, N = a.shape[1]
    cdef int i
    with nogil:
        for r in range(a.shape[0]):
            for i in range(n):
                bit = 1 << i
                for f in range(N):
                    if f & bit:
                        a[r, f] += a[r, f ^ bit]


def superset_sum(double[:, ::1] a, int n):
    cdef Py_ssize_t r, f, bit, N = a.shape[1]
    cdef int i
    with nogil:
        for r in range(a.shape[0]):
            for i in range(n):
                bit = 1 << i
                for f in range(N):
                    if not (f & bit):
                        a[r, f] += a[r, f | bit]


def subset_diff(double[:, ::1] a, int n):
    cdef Py_ssize_t r, f, bit, N = a.shape[1]
    cdef int i
    with nogil:
        for r in range(a.shape[0]):
            for i in range(n):
                bit = 1 << i
                for f in range(N):
                    if f & bit:
                        a[r, f] -= a[r, f ^ bit]


def superset_diff(double[:, ::1] a, int n):
    cdef Py_ssize_t r, f, bit, N = a.shape[1]
    cdef int i
    with nogil:
        for r in range(a.shape[0]):
            for i in range(n):
                bit = 1 << i
                for f in range(N):
                    if not (f & bit):
                        a[r, f] -= a[r, f | bit]


cdef void _fc_row(double* m, double* lo, double* fc, int n, Py_ssize_t N) noexcept nogil:
    cdef Py_ssize_t f, bit
    cdef int i
    for f in range(N):
        lo[f] = m[f]
        fc[f] = m[f]
    for i in range(n):
        bit = 1 << i
        for f in range(N):
            if f & bit:
                lo[f] += lo[f ^ bit]
            else:
                fc[f] += fc[f | bit]
    for f in range(N):
        fc[f] += lo[f] - m[f]


cdef void _step_row(double* m, double* lo, double* fc, int n, Py_ssize_t N, int k) noexcept nogil:
    cdef Py_ssize_t f, bit, child
    cdef int i
    cdef bint any_mass = False
    cdef double den, held
    for f in range(N):
        if m[f] != 0.0 and popcount(f) == k:
            any_mass = True
            break
    if not any_mass:
        return
    _fc_row(m, lo, fc, n, N)
    for f in range(N):
        if popcount(f) != k:
            continue
        held = m[f]
        if held == 0.0:
            continue
        den = 0.0
        for i in range(n):
            bit = 1 << i
            if f & bit:
                den += fc[f ^ bit]
        for i in range(n):
            bit = 1 << i
            if f & bit:
                child = f ^ bit
                if den > 0.0:
                    m[child] += held * fc[child] / den
                else:
                    m[child] += held / k
        m[f] = 0.0


def full_causality(double[:, ::1] a, int n, double[:, ::1] out):
    cdef Py_ssize_t r, N = a.shape[1]
    cdef double[::1] lo = np.empty(N)
    with nogil:
        for r in range(a.shape[0]):
            _fc_row(&a[r, 0], &lo[0], &out[r, 0], n, N)


def fcpt_step(double[:, ::1] a, int n, int k):
    cdef Py_ssize_t r, N = a.shape[1]
    cdef double[::1] lo = np.empty(N)
    cdef double[::1] fc = np.empty(N)
    with nogil:
        for r in range(a.shape[0]):
            _step_row(&a[r, 0], &lo[0], &fc[0], n, N, k)


def fcpt_run(double[:, ::1] a, int n):
    cdef Py_ssize_t r, N = a.shape[1]
    cdef int k
    cdef double[::1] lo = np.empty(N)
    cdef double[::1] fc = np.empty(N)
    with nogil:
        for r in range(a.shape[0]):
            for k in range(n, 1, -1):
                _step_row(&a[r, 0], &lo[0], &fc[0], n, N, k)


def dcr_bayes(double[:, ::1] p1, double[:, ::1] p2):
    cdef Py_ssize_t r, i, j, n = p1.shape[1]
    out_arr = np.zeros((p1.shape[0], 1 << n))
    cdef double[:, ::1] out = out_arr
    with nogil:
        for r in range(p1.shape[0]):
            for i in range(n):
                for j in range(n):
                    out[r, (1 << i) | (1 << j)] += p1[r, i] * p2[r, j]
    return out_arr


def pcr_batch(double[:, ::1] p1, double[:, ::1] p2):
    cdef Py_ssize_t r, i, n = p1.shape[1]
    cdef Py_ssize_t N = 1 << n
    cdef int k
    m_arr = dcr_bayes(p1, p2)
    cdef double[:, ::1] m = m_arr
    res_arr = np.empty((p1.shape[0], n))
    cdef double[:, ::1] res = res_arr
    cdef double[::1] lo = np.empty(N)
    cdef double[::1] fc = np.empty(N)
    with nogil:
        for r in range(m.shape[0]):
            for k in range(n, 1, -1):
                _step_row(&m[r, 0], &lo[0], &fc[0], n, N, k)
            for i in range(n):
                res[r, i] = m[r, 1 << i]
    return res_arr
