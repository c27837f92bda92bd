# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: stable-density quadrature and one-sided Jacobi.

Algorithms match ``_fallback.py`` step for step; only the loop structure
differs (cyclic row ordering here, round-robin there).
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, M_PI, cos, exp, expm1, fabs, fmax, lgamma, log, pow, sin, sqrt

from ._fallback import LOGSINC_COEF
from .errors import NonConvergenceError
from .quadrature import leggauss

cnp.import_array()

cdef double[12] _LOGSINC
for _i, _c in enumerate(LOGSINC_COEF):
    _LOGSINC[_i] = _c
cdef int _NCOEF = 12
cdef double _SERIES_SWITCH = 0.5
cdef int _SERIES_TERMS = 200
cdef double _CUTOFF = 46.0
cdef double _SPREAD = 3.0
cdef Py_ssize_t _MAX_PANELS = 100000
cdef double _HALF_PI = 0.5 * M_PI


cdef inline double _logsinc(double x, double sx) nogil:
    cdef double x2, acc = 0.0
    cdef int k
    if x < 0.5:
        x2 = x * x
        for k in range(_NCOEF - 1, -1, -1):
            acc = acc * x2 + _LOGSINC[k]
        return acc * x2
    return log(sx / x)


cdef inline double _dlogsinc(double x, double sx, double cx) nogil:
    cdef double x2, acc = 0.0
    cdef int k
    if x < 0.5:
        x2 = x * x
        for k in range(_NCOEF, 0, -1):
            acc = acc * x2 + 2 * k * _LOGSINC[k - 1]
        return acc * x
    return cx / sx - 1.0 / x


cdef inline double _shape(double theta, double psi, double s, double* slope) nogil:
    cdef double sin_t, cos_t, a = s * theta, b = (1.0 - s) * theta
    cdef double sa = sin(a), sb = sin(b), r = s / (1.0 - s)
    if theta <= _HALF_PI:
        sin_t = sin(theta)
        cos_t = cos(theta)
    else:
        sin_t = sin(psi)
        cos_t = -cos(psi)
    if slope != NULL:
        slope[0] = (r * s * _dlogsinc(a, sa, cos(a)) + (1.0 - s) * _dlogsinc(b, sb, cos(b))
                    - _dlogsinc(theta, sin_t, cos_t) / (1.0 - s))
    return r * _logsinc(a, sa) + _logsinc(b, sb) - _logsinc(theta, sin_t) / (1.0 - s)


cdef inline double _point(double theta, double psi, double s, double b0, double log_b0,
                          double* slope, double* bval) nogil:
    cdef double d = _shape(theta, psi, s, slope), excess, b
    if log_b0 + d > 700.0:
        slope[0] = INFINITY
        bval[0] = INFINITY
        return -INFINITY
    excess = b0 * expm1(d)
    b = b0 + excess
    slope[0] = slope[0] * (1.0 - b)
    bval[0] = b
    return log(b) - excess


cdef inline double _integrand(double theta, double psi, double s, double b0, double log_b0) nogil:
    cdef double d = _shape(theta, psi, s, NULL), excess
    if log_b0 + d > 700.0:
        return 0.0
    excess = b0 * expm1(d)
    return (b0 + excess) * exp(-excess)


cdef int _half(double s, double b0, double log_b0, bint lower,
               const double[::1] gx, const double[::1] gw, double* total) nogil:
    cdef double peak = log_b0 if b0 >= 1.0 else b0 - 1.0
    cdef double pos, step, nxt, theta, psi, value = 0.0, slope0 = 0.0, slope1 = 0.0, b1 = 0.0
    cdef double mid, half, node, acc = 0.0, dummy
    cdef Py_ssize_t panel, k, order = gx.shape[0]
    if lower:
        pos = 0.0
    else:
        pos = _HALF_PI
        _point(_HALF_PI, _HALF_PI, s, b0, log_b0, &slope0, &dummy)
    for panel in range(_MAX_PANELS):
        if lower:
            step = _HALF_PI - pos
        else:
            step = 0.5 * pos
        if step > 0.25:
            step = 0.25
        while True:
            nxt = pos + step if lower else pos - step
            if lower:
                theta, psi = nxt, M_PI - nxt
            else:
                theta, psi = M_PI - nxt, nxt
            value = _point(theta, psi, s, b0, log_b0, &slope1, &b1)
            if fmax(fabs(slope0), fabs(slope1)) * step <= _SPREAD:
                break
            step *= 0.5
        mid = 0.5 * (pos + nxt)
        half = 0.5 * step
        for k in range(order):
            node = mid + half * gx[k]
            if lower:
                acc += half * gw[k] * _integrand(node, M_PI - node, s, b0, log_b0)
            else:
                acc += half * gw[k] * _integrand(M_PI - node, node, s, b0, log_b0)
        pos = nxt
        slope0 = slope1
        if (value < peak - _CUTOFF and b1 > 1.0) or (lower and pos >= _HALF_PI):
            total[0] += acc
            return 0
    return -1


cdef double _series(double tau, double t, double s) nogil:
    cdef double log_z = log(t) - s * log(tau), total = 0.0, mag
    cdef int k
    for k in range(1, _SERIES_TERMS + 1):
        mag = exp(lgamma(k * s + 1.0) - lgamma(k + 1.0) + k * log_z)
        if k % 2 == 1:
            total += mag * sin(M_PI * k * s)
        else:
            total -= mag * sin(M_PI * k * s)
        if mag <= 1e-17 * fabs(total):
            break
    return total / (M_PI * tau)


cdef int _density_one(double tau, double t, double s,
                      const double[::1] gx, const double[::1] gw,
                      double* result) nogil:
    cdef double log_z = log(t) - s * log(tau)
    cdef double log_b0, b0, total = 0.0
    if log_z <= log(_SERIES_SWITCH):
        result[0] = _series(tau, t, s)
        return 0
    log_b0 = log_z / (1.0 - s) + (s / (1.0 - s)) * log(s) + log(1.0 - s)
    if log_b0 > 700.0:
        result[0] = 0.0
        return 0
    b0 = exp(log_b0)
    if _half(s, b0, log_b0, True, gx, gw, &total) != 0:
        return -1
    if _half(s, b0, log_b0, False, gx, gw, &total) != 0:
        return -1
    if total <= 0.0:
        result[0] = 0.0
    else:
        result[0] = s / ((1.0 - s) * M_PI * tau) * exp(log(total) - b0)
    return 0


def stable_density_integral(tau, double t, double s):
    """One-sided s-stable density; see ``_fallback.stable_density_integral``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] taus = np.ascontiguousarray(
        np.atleast_1d(np.asarray(tau, dtype=np.float64)))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(taus)
    x, w = leggauss(16)
    cdef const double[::1] gx = np.ascontiguousarray(x)
    cdef const double[::1] gw = np.ascontiguousarray(w)
    cdef double[::1] tv = taus
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = taus.shape[0]
    cdef int status = 0
    with nogil:
        for i in range(n):
            if _density_one(tv[i], t, s, gx, gw, &ov[i]) != 0:
                status = -1
                break
    if status != 0:
        raise NonConvergenceError("stable-density panel walk did not terminate")
    return out


def jacobi_rows(a, double tol=1e-15, int max_sweeps=50):
    """One-sided cyclic Jacobi orthogonalisation of the rows of ``a``.

    Returns ``(g, sweeps)`` with the rows of ``g`` mutually orthogonal.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] g = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] gv = g
    cdef Py_ssize_t n = g.shape[0], m = g.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] norms_arr = np.empty(n)
    cdef double[::1] norms = norms_arr
    cdef Py_ssize_t i, j, k, rotated
    cdef int sweep
    cdef double alpha, beta, gamma, zeta, tn, cs, sn, gi, gj, acc0, acc1, acc2, acc3
    cdef double* ri
    cdef double* rj
    with nogil:
        for sweep in range(1, max_sweeps + 1):
            for i in range(n):
                ri = &gv[i, 0]
                acc0 = 0.0
                for k in range(m):
                    acc0 += ri[k] * ri[k]
                norms[i] = acc0
            rotated = 0
            for i in range(n - 1):
                ri = &gv[i, 0]
                for j in range(i + 1, n):
                    rj = &gv[j, 0]
                    acc0 = 0.0
                    acc1 = 0.0
                    acc2 = 0.0
                    acc3 = 0.0
                    k = 0
                    while k + 3 < m:
                        acc0 += ri[k] * rj[k]
                        acc1 += ri[k + 1] * rj[k + 1]
                        acc2 += ri[k + 2] * rj[k + 2]
                        acc3 += ri[k + 3] * rj[k + 3]
                        k += 4
                    while k < m:
                        acc0 += ri[k] * rj[k]
                        k += 1
                    gamma = (acc0 + acc1) + (acc2 + acc3)
                    alpha = norms[i]
                    beta = norms[j]
                    if fabs(gamma) <= tol * sqrt(alpha * beta):
                        continue
                    zeta = (beta - alpha) / (2.0 * gamma)
                    if zeta >= 0.0:
                        tn = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                    else:
                        tn = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                    cs = 1.0 / sqrt(1.0 + tn * tn)
                    sn = cs * tn
                    for k in range(m):
                        gi = ri[k]
                        gj = rj[k]
                        ri[k] = cs * gi - sn * gj
                        rj[k] = sn * gi + cs * gj
                    norms[i] = alpha - tn * gamma
                    norms[j] = beta + tn * gamma
                    rotated += 1
            if rotated == 0:
                break
    if rotated != 0:
        raise NonConvergenceError(
            f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")
    return g, sweep
