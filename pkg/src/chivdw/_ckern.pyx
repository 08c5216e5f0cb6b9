# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the numerical hot kernels.

Signature-compatible with ``chivdw._pykern``; see that module for the
contracts.  The loops here avoid temporary (T, n) broadcast products and run
the 3x3 contractions in registers.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, sqrt, M_PI

cnp.import_array()

BACKEND = "compiled"


def response_tensors(omegas, ds, mts, xis):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = \
        np.ascontiguousarray(omegas, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] d = \
        np.ascontiguousarray(ds, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] m = \
        np.ascontiguousarray(mts, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = \
        np.ascontiguousarray(xis, dtype=np.float64)
    cdef Py_ssize_t T = w.shape[0]
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=3] alpha = np.zeros((n, 3, 3))
    cdef cnp.ndarray[cnp.float64_t, ndim=3] beta = np.zeros((n, 3, 3))
    cdef cnp.ndarray[cnp.float64_t, ndim=3] chi = np.zeros((n, 3, 3))
    cdef Py_ssize_t t, k, i, j
    cdef double den, wa, wc, xk
    for k in range(n):
        xk = x[k]
        for t in range(T):
            den = w[t] * w[t] + xk * xk
            wa = 2.0 * w[t] / den
            wc = 2.0 * xk / den
            for i in range(3):
                for j in range(3):
                    alpha[k, i, j] += wa * d[t, i] * d[t, j]
                    beta[k, i, j] += wa * m[t, i] * m[t, j]
                    chi[k, i, j] += wc * d[t, i] * m[t, j]
    return alpha, beta, chi


def free_blocks(rvec, xis):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r = \
        np.ascontiguousarray(rvec, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = \
        np.ascontiguousarray(xis, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=3] S = np.empty((n, 3, 3))
    cdef cnp.ndarray[cnp.float64_t, ndim=3] X = np.empty((n, 3, 3))
    cdef double R = sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2])
    cdef double inv = 1.0 / (4.0 * M_PI * R * R * R)
    cdef double rh[3]
    cdef Py_ssize_t k, i, j
    cdef double xk, e, f, g, pref, sij
    for i in range(3):
        rh[i] = r[i] / R
    cdef double cx[3][3]
    cx[0][0] = 0.0;      cx[0][1] = -r[2];  cx[0][2] = r[1]
    cx[1][0] = r[2];     cx[1][1] = 0.0;    cx[1][2] = -r[0]
    cx[2][0] = -r[1];    cx[2][1] = r[0];   cx[2][2] = 0.0
    for k in range(n):
        xk = x[k] * R
        e = exp(-xk) * inv
        f = 1.0 + xk + xk * xk
        g = 3.0 + 3.0 * xk + xk * xk
        pref = x[k] * e * (1.0 + xk)
        for i in range(3):
            for j in range(3):
                sij = -g * rh[i] * rh[j]
                if i == j:
                    sij += f
                S[k, i, j] = e * sij
                X[k, i, j] = pref * cx[i][j]
    return S, X


def trace4(a, b, c, d):
    cdef cnp.ndarray[cnp.float64_t, ndim=3] aa = \
        np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=3] bb = \
        np.ascontiguousarray(b, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=3] cc = \
        np.ascontiguousarray(c, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=3] dd = \
        np.ascontiguousarray(d, dtype=np.float64)
    cdef Py_ssize_t n = aa.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef Py_ssize_t k, i, j, p, q
    cdef double acc, ab_ij, abc_ij
    cdef double ab[3][3]
    cdef double abc[3][3]
    for k in range(n):
        for i in range(3):
            for j in range(3):
                ab_ij = 0.0
                for p in range(3):
                    ab_ij += aa[k, i, p] * bb[k, p, j]
                ab[i][j] = ab_ij
        for i in range(3):
            for j in range(3):
                abc_ij = 0.0
                for p in range(3):
                    abc_ij += ab[i][p] * cc[k, p, j]
                abc[i][j] = abc_ij
        acc = 0.0
        for i in range(3):
            for q in range(3):
                acc += abc[i][q] * dd[k, q, i]
        out[k] = acc
    return out
