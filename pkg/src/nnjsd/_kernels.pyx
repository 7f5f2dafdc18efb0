# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Mirrors ``_kernels_py`` operation for operation."""

import numpy as np

from libc.math cimport log, log1p, atanh, fabs


cdef inline double _xlogx(double x) nogil:
    if x == 0.0:
        return 0.0
    return x * log(x)


def entropy_sum(const double[::1] p):
    cdef Py_ssize_t j, n = p.shape[0]
    cdef double s = 0.0
    with nogil:
        for j in range(n):
            if p[j] > 0.0:
                s = s + p[j] * log(p[j])
    return -s


def half_weighted_sum(const double[::1] w, const double[::1] d):
    cdef Py_ssize_t j, n = w.shape[0]
    cdef double s = 0.0
    with nogil:
        for j in range(n):
            s = s + w[j] * d[j]
    return 0.5 * s


def series_deltas(const double[::1] eps, const double[::1] b):
    cdef Py_ssize_t j, m
    cdef Py_ssize_t n = eps.shape[0]
    cdef Py_ssize_t k = b.shape[0]
    cdef Py_ssize_t groups = k // 2
    cdef bint lone = k % 2
    cdef double e, e2, pw, acc
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for j in range(n):
            e = eps[j]
            e2 = e * e
            pw = e2
            acc = 0.0
            for m in range(groups):
                # (B_{2m-1} + B_{2m} e) e^{2m}: each group is >= 0
                acc = acc + (b[2 * m] + b[2 * m + 1] * e) * pw
                pw = pw * e2
            if lone:
                acc = acc + b[k - 1] * pw
            o[j] = acc
    return out


def exact_deltas(const double[::1] eps, double alpha):
    cdef Py_ssize_t j, n = eps.shape[0]
    cdef double e, ae
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for j in range(n):
            e = eps[j]
            ae = alpha * e
            if e == 0.0:
                o[j] = 0.0
            elif fabs(e) <= 0.5:
                o[j] = (1.0 + ae) * (log1p(-(e * e)) - 2.0 * log1p(ae)) + (alpha + e) * (2.0 * atanh(e))
            else:
                o[j] = ((1.0 + alpha) * _xlogx(1.0 + e) + (1.0 - alpha) * _xlogx(1.0 - e)) - 2.0 * _xlogx(1.0 + ae)
    return out
