# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see _pykernels for the reference versions."""

import numpy as np
from libc.math cimport fabs, log


def pair_moments(values, double h, double sigma, double log_lo, double inv_width, Py_ssize_t nbins):
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    weight_arr = np.zeros(nbins)
    first_arr = np.zeros(nbins)
    cdef double[::1] weight = weight_arr
    cdef double[::1] first = first_arr
    cdef Py_ssize_t i, k, b
    cdef double d, w, du, lq, lsd
    for k in range(1, n):
        d = k * h
        w = 2.0 * h * h / d
        lsd = sigma * log(d)
        for i in range(n - k):
            du = fabs(v[i + k] - v[i])
            if du == 0.0:
                continue
            lq = log(du) - lsd
            b = <Py_ssize_t>((lq - log_lo) * inv_width)
            if b < 0:
                b = 0
            elif b >= nbins:
                b = nbins - 1
            weight[b] += w
            first[b] += w * lq
    return weight_arr, first_arr
