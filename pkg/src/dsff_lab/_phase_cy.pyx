# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled phase-sum kernel: fused cos/sin accumulation, no temporaries.

Summation runs in fixed sample-major order, so results are deterministic
for a given build regardless of how callers parallelize around it.
"""
from libc.math cimport cos, sin

import numpy as np


def linear_stat_sums(double[:, ::1] re, double[:, ::1] im, double t, double s):
    """Per-sample sums of exp(i(t x + s y)); mirrors _phase_np exactly."""
    cdef Py_ssize_t m = re.shape[0]
    cdef Py_ssize_t n = re.shape[1]
    cdef Py_ssize_t i, j
    cdef double ph, acc_re, acc_im
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] view = out
    for i in range(m):
        acc_re = 0.0
        acc_im = 0.0
        for j in range(n):
            ph = t * re[i, j] + s * im[i, j]
            acc_re += cos(ph)
            acc_im += sin(ph)
        view[i] = acc_re + 1j * acc_im
    return out
