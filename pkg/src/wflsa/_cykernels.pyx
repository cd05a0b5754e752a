# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: sparse signed-difference operator and the full
two-step iteration loop. Semantics match ``_pykernels`` exactly."""
import numpy as np

cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()

BACKEND_NAME = "cython"


def apply_d(const cnp.int64_t[::1] ei, const cnp.int64_t[::1] ej, const double[::1] ew, const double[::1] beta):
    cdef Py_ssize_t m = ew.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t t
    for t in range(m):
        o[t] = ew[t] * (beta[ei[t]] - beta[ej[t]])
    return out


def apply_dt(const cnp.int64_t[::1] ei, const cnp.int64_t[::1] ej, const double[::1] ew, const double[::1] alpha, Py_ssize_t p):
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(p, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t m = ew.shape[0]
    cdef Py_ssize_t t
    cdef double wa
    for t in range(m):
        wa = ew[t] * alpha[t]
        o[ei[t]] += wa
        o[ej[t]] -= wa
    return out


def admm_run(const double[::1] y, const cnp.int64_t[::1] ei, const cnp.int64_t[::1] ej, const double[::1] ew,
             double lambda2, double rho, double q, double eps, long max_iter):
    cdef Py_ssize_t p = y.shape[0]
    cdef Py_ssize_t m = ew.shape[0]
    cdef cnp.ndarray[double, ndim=1] beta_arr = np.zeros(p, dtype=np.float64)
    cdef double[::1] beta = beta_arr
    cdef double[::1] beta_next = np.zeros(p, dtype=np.float64)
    cdef double[::1] alpha = np.zeros(m, dtype=np.float64)
    cdef double[::1] alpha_prev = np.zeros(m, dtype=np.float64)
    cdef double[::1] dt = np.zeros(p, dtype=np.float64)
    cdef double rq = rho * q
    cdef double inv = 1.0 / (rq + 1.0)
    cdef double step = rho * lambda2
    cdef double delta = 0.0
    cdef double s, b, x
    cdef long iterations = 0
    cdef bint converged = False
    cdef Py_ssize_t t, l
    cdef double[::1] tmp

    while iterations < max_iter:
        for l in range(p):
            dt[l] = 0.0
        for t in range(m):
            s = ew[t] * (2.0 * alpha[t] - alpha_prev[t])
            dt[ei[t]] += s
            dt[ej[t]] -= s
        delta = 0.0
        for l in range(p):
            b = (rq * beta[l] + y[l] - lambda2 * dt[l]) * inv
            delta += fabs(b - beta[l])
            beta_next[l] = b
        for t in range(m):
            x = alpha[t] + step * ew[t] * (beta_next[ei[t]] - beta_next[ej[t]])
            if x < -1.0:
                x = -1.0
            elif x > 1.0:
                x = 1.0
            alpha_prev[t] = alpha[t]
            alpha[t] = x
        tmp = beta
        beta = beta_next
        beta_next = tmp
        iterations += 1
        if delta < eps:
            converged = True
            break

    out = np.empty(p, dtype=np.float64)
    cdef double[::1] o = out
    for l in range(p):
        o[l] = beta[l]
    return out, iterations, converged, delta
