# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Same contracts and iteration schedules as irswpsn.kernels.pure; the scalar
loops run in C so the nested water-filling solve is cheap enough for the
sweep harness.
"""

from libc.math cimport exp, expm1, fabs, log, log1p, sqrt
from libc.math cimport isnan as c_isnan

import numpy as np

__all__ = ["lambert_w0", "golden_section_max", "bisect_root", "kkt_general_alloc"]

cdef double _INV_E = exp(-1.0)
cdef double _E = exp(1.0)
cdef double _GOLDEN = (sqrt(5.0) - 1.0) / 2.0
cdef double _X_CAP = 1e300
cdef double _MU_SAT = 699.0


def lambert_w0(double x, double tol=1e-12, int max_iter=64):
    """Principal-branch Lambert W via Halley; see the pure backend."""
    cdef double p2, p, w, target, ew, f, wp1
    cdef int i
    if c_isnan(x):
        raise ValueError("lambert_w0: x is nan")
    if x < -_INV_E:
        if -_INV_E - x > 1e-12 * max(1.0, fabs(x)):
            raise ValueError(f"lambert_w0: x={x!r} < -1/e is outside the domain")
        return -1.0
    if x == 0.0:
        return 0.0

    p2 = 2.0 * (_E * x + 1.0)
    if p2 <= 0.0:
        return -1.0
    if p2 < 2.0:
        p = sqrt(p2)
        w = -1.0 + p - p2 / 3.0 + (11.0 / 72.0) * p2 * p
    elif x < _E:
        w = x / _E
    else:
        w = log(x)
        w -= log(w)

    target = tol * max(1.0, fabs(x))
    for i in range(max_iter):
        ew = exp(w)
        f = w * ew - x
        if fabs(f) <= target:
            return w
        wp1 = w + 1.0
        w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
    raise RuntimeError(f"lambert_w0: no convergence for x={x!r}")


def golden_section_max(f, double lo, double hi, double tol=1e-9, int max_iter=200):
    """Maximize a unimodal scalar function on [lo, hi]; returns (x, f(x))."""
    cdef double a, b, x1, x2, f1, f2, xm
    cdef int i
    if not hi > lo:
        raise ValueError(f"golden_section_max: empty interval [{lo!r}, {hi!r}]")
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1 = f(x1)
    f2 = f(x2)
    for i in range(max_iter):
        if b - a <= tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def bisect_root(f, double lo, double hi, double tol=1e-10, int max_iter=200):
    """Bisection root of a sign-changing scalar function on [lo, hi]."""
    cdef double a, b, fa, fb, m, fm
    cdef int i
    a, b = lo, hi
    if not b > a:
        raise ValueError(f"bisect_root: empty interval [{lo!r}, {hi!r}]")
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError("bisect_root: no sign change over the bracket")
    for i in range(max_iter):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0.0) == (fa > 0.0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


cdef inline double _psi(double x, double d) nogil:
    return log1p(x - d) - x / (1.0 + x - d)


cdef double _x_of_mu_scalar(double mu, double d) except -1.0:
    # root of psi(x; d) = mu on x > max(d, 0); mirrors pure._x_of_mu
    cdef double base, lo, hi, w, mid
    cdef int i
    if mu > _MU_SAT:
        return _X_CAP
    base = d if d > 0.0 else 0.0
    lo = base + expm1(mu if mu > 0.0 else 0.0)
    w = fabs(lo) * 1e-12
    if w < 1.0:
        w = 1.0
    hi = lo + w
    for i in range(1200):
        # entries saturating the float range stay capped (x effectively inf)
        if _psi(hi, d) > mu or hi >= _X_CAP:
            break
        hi = lo + 2.0 * (hi - lo)
        if hi > _X_CAP:
            hi = _X_CAP
    for i in range(62):
        mid = 0.5 * (lo + hi)
        if _psi(mid, d) < mu:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def kkt_general_alloc(a_in, b_in, d_in, double budget, double tol=1e-10,
                      int max_outer=200):
    """Stationary point of the coupled WET-slot/uplink-slot program.

    Same return convention as the pure backend: (mu1, t02, x, status).
    """
    a_arr = np.ascontiguousarray(a_in, dtype=np.float64)
    b_arr = np.ascontiguousarray(b_in, dtype=np.float64)
    d_arr = np.ascontiguousarray(d_in, dtype=np.float64)
    cdef double[::1] a = a_arr
    cdef double[::1] b = b_arr
    cdef double[::1] d = d_arr
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k
    cdef double sum_b = 0.0, sum_a_active = 0.0
    cdef double lo, hi, mid, mu, r, sbx, sax, t02, step, slope, xk, mu_new
    cdef int i, all_d_pos, any_active

    x_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] x = x_arr

    for k in range(n):
        sum_b += b[k]

    if sum_b > 0.0:
        lo = 0.0
        hi = sum_b + 1.0
        if hi > 720.0:
            hi = 720.0
        for i in range(max_outer):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            r = -mid
            for k in range(n):
                xk = _x_of_mu_scalar(mid, d[k])
                r += b[k] / (1.0 + xk - d[k])
            if r > 0.0:
                lo = mid
            else:
                hi = mid
        mu = 0.5 * (lo + hi)
        for i in range(3):
            r = -mu
            sbx = 0.0
            for k in range(n):
                xk = _x_of_mu_scalar(mu, d[k])
                r += b[k] / (1.0 + xk - d[k])
                sbx += b[k] / xk
            mu_new = mu + r / (1.0 + sbx)
            if not (0.0 < mu_new < 720.0):
                break
            mu = mu_new
        sax = 0.0
        sbx = 0.0
        for k in range(n):
            x[k] = _x_of_mu_scalar(mu, d[k])
            sax += a[k] / x[k]
            sbx += b[k] / x[k]
        t02 = (budget - sax) / (1.0 + sbx)
        if t02 >= 0.0:
            return mu, t02, x_arr, 0

    any_active = 0
    all_d_pos = 1
    for k in range(n):
        if a[k] > 0.0:
            any_active = 1
            sum_a_active += a[k]
            if d[k] <= 0.0:
                all_d_pos = 0
    if not any_active:
        x_arr.fill(np.inf)
        return 0.0, 0.0, x_arr, 1

    if all_d_pos:
        sax = 0.0
        for k in range(n):
            x[k] = _x_of_mu_scalar(0.0, d[k])
            if a[k] > 0.0:
                sax += a[k] / x[k]
        if sax <= budget:
            return 0.0, 0.0, x_arr, 2

    hi = 1.0
    for i in range(60):
        sax = 0.0
        for k in range(n):
            if a[k] > 0.0:
                sax += a[k] / _x_of_mu_scalar(hi, d[k])
        if sax - budget < 0.0:
            break
        hi *= 2.0
    else:
        raise RuntimeError("kkt_general_alloc: boundary bracket growth failed")
    lo = 0.0
    for i in range(max_outer):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        sax = 0.0
        for k in range(n):
            if a[k] > 0.0:
                sax += a[k] / _x_of_mu_scalar(mid, d[k])
        if sax - budget > 0.0:
            lo = mid
        else:
            hi = mid
    mu = 0.5 * (lo + hi)
    for i in range(3):
        r = -budget
        slope = 0.0
        for k in range(n):
            if a[k] > 0.0:
                xk = _x_of_mu_scalar(mu, d[k])
                r += a[k] / xk
                slope += a[k] * (1.0 + xk - d[k]) ** 2 / (xk * xk * xk)
        if slope <= 0.0:
            break
        mu_new = mu + r / slope
        if not mu_new > 0.0:
            break
        mu = mu_new
    for k in range(n):
        x[k] = _x_of_mu_scalar(mu, d[k])
    return mu, 0.0, x_arr, 1
