"""Pure-Python numeric kernels.

Reference implementations of the scalar iterative routines.  The compiled
extension (irswpsn.kernels._core) shadows these when it is importable; both
backends expose identical signatures and meet the same residual contracts.
"""

import math

import numpy as np

__all__ = ["lambert_w0", "golden_section_max", "bisect_root", "kkt_general_alloc"]

_INV_E = math.exp(-1.0)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def lambert_w0(x, tol=1e-12, max_iter=64):
    """Principal-branch Lambert W: the w >= -1 solving w*exp(w) = x.

    Defined for x >= -1/e.  Halley iteration; near the branch point the
    series in p = sqrt(2*(e*x + 1)) seeds the iterate, elsewhere a log
    asymptote does.  On return |w*exp(w) - x| <= tol*max(1, |x|).
    """
    if math.isnan(x):
        raise ValueError("lambert_w0: x is nan")
    if x < -_INV_E:
        # tolerate roundoff just beyond the branch point, reject real gaps
        if -_INV_E - x > 1e-12 * max(1.0, abs(x)):
            raise ValueError(f"lambert_w0: x={x!r} < -1/e is outside the domain")
        return -1.0
    if x == 0.0:
        return 0.0

    p2 = 2.0 * (math.e * x + 1.0)
    if p2 <= 0.0:
        return -1.0
    if p2 < 2.0:
        # branch-point series w = -1 + p - p^2/3 + 11 p^3/72 - ...
        p = math.sqrt(p2)
        w = -1.0 + p - p2 / 3.0 + (11.0 / 72.0) * p2 * p
    elif x < math.e:
        w = x / math.e
    else:
        w = math.log(x)
        w -= math.log(w)

    target = tol * max(1.0, abs(x))
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= target:
            return w
        wp1 = w + 1.0
        # Halley step for f(w) = w e^w - x
        w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
    raise RuntimeError(f"lambert_w0: no convergence for x={x!r}")


def golden_section_max(f, lo, hi, tol=1e-9, max_iter=200):
    """Maximize a unimodal scalar function on [lo, hi].

    Golden-ratio interval shrinkage until the bracket is narrower than tol.
    Returns (x, f(x)) at the final midpoint.
    """
    if not hi > lo:
        raise ValueError(f"golden_section_max: empty interval [{lo!r}, {hi!r}]")
    a, b = float(lo), float(hi)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
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


def bisect_root(f, lo, hi, tol=1e-10, max_iter=200):
    """Root of a sign-changing scalar function on [lo, hi] by bisection.

    Stops once the bracket is narrower than tol (absolute).  Raises
    ValueError when f(lo) and f(hi) have the same sign.
    """
    a, b = float(lo), float(hi)
    if not b > a:
        raise ValueError(f"bisect_root: empty interval [{lo!r}, {hi!r}]")
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError("bisect_root: no sign change over the bracket")
    for _ in range(max_iter):
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


# -- two-level water-filling for the energy/time split with circuit power --
#
# Variables: per-sensor x_k = (a_k + t02*b_k)/tau_k and multiplier mu1 >= 0.
# Stationarity in tau_k:   psi(x_k; d_k) = log(1+x_k-d_k) - x_k/(1+x_k-d_k) = mu1
# Stationarity in t02:     sum_k b_k/(1+x_k-d_k) = mu1         (interior t02)
# Boundary t02 = 0:        sum_k a_k/x_k = budget
# psi is strictly increasing in x on x > max(d, 0) (psi' = x/(1+x-d)^2).

_X_CAP = 1e300
_MU_SAT = 699.0  # beyond this the psi-root exceeds float range


def _psi(x, d):
    return np.log1p(x - d) - x / (1.0 + x - d)


def _x_of_mu(mu, d, n_iter=62):
    """Vector of roots of psi(x; d_k) = mu, one per entry of d."""
    d = np.asarray(d, dtype=float)
    if mu > _MU_SAT:
        return np.full(d.shape, _X_CAP)
    base = np.maximum(d, 0.0)
    lo = base + math.expm1(max(mu, 0.0))  # psi(lo) <= mu always
    hi = lo + np.maximum(1.0, np.abs(lo) * 1e-12)
    for _ in range(1200):
        # entries saturating the float range stay capped (x effectively inf)
        need = (_psi(hi, d) <= mu) & (hi < _X_CAP)
        if not need.any():
            break
        hi = np.where(need, np.minimum(lo + 2.0 * (hi - lo), _X_CAP), hi)
    else:
        raise RuntimeError("kkt_general_alloc: psi bracket growth failed")
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        low = _psi(mid, d) < mu
        lo = np.where(low, mid, lo)
        hi = np.where(low, hi, mid)
    return 0.5 * (lo + hi)


def kkt_general_alloc(a, b, d, budget, tol=1e-10, max_outer=200):
    """Stationary point of the coupled WET-slot/uplink-slot program.

    a, b, d: nonnegative coefficient arrays with a_k + b_k > 0 per entry;
    budget: total time available to t02 + sum(tau), > 0.
    Returns (mu1, t02, x, status); status 0 = interior t02, 1 = t02 pinned
    at zero, 2 = slack time (mu1 = 0; only possible when every energized
    sensor pays circuit power).  tau recovery: tau_k = (a_k + t02*b_k)/x_k.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = np.asarray(d, dtype=float)
    sum_b = float(np.sum(b))

    if sum_b > 0.0:
        # interior branch: bisect mu on R(mu) = sum b/(1+x-d) - mu, decreasing
        def resid(mu):
            x = _x_of_mu(mu, d)
            return float(np.sum(b / (1.0 + x - d))) - mu, x

        lo, hi = 0.0, min(sum_b + 1.0, 720.0)
        for _ in range(max_outer):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            r, _ = resid(mid)
            if r > 0.0:
                lo = mid
            else:
                hi = mid
        mu = 0.5 * (lo + hi)
        # Newton polish with the exact derivative R'(mu) = -(1 + sum b/x)
        for _ in range(3):
            r, x = resid(mu)
            step = r / (1.0 + float(np.sum(b / x)))
            mu_new = mu + step
            if not (0.0 < mu_new < 720.0):
                break
            mu = mu_new
        x = _x_of_mu(mu, d)
        t02 = (budget - float(np.sum(a / x))) / (1.0 + float(np.sum(b / x)))
        if t02 >= 0.0:
            return mu, t02, x, 0

    # t02 = 0 boundary; only sensors with a_k > 0 carry time
    active = a > 0.0
    if not active.any():
        # nothing to allocate (dead network caught by the caller normally)
        return 0.0, 0.0, np.full(d.shape, np.inf), 1

    if np.all(d[active] > 0.0):
        # with per-sensor circuit cost the unconstrained optima may already
        # fit inside the horizon: time constraint slack, mu1 = 0
        x0 = _x_of_mu(0.0, d)
        if float(np.sum(a[active] / x0[active])) <= budget:
            return 0.0, 0.0, x0, 2

    def resid0(mu):
        x = _x_of_mu(mu, d)
        return float(np.sum(a[active] / x[active])) - budget, x

    hi = 1.0
    for _ in range(60):
        r, _ = resid0(hi)
        if r < 0.0:
            break
        hi *= 2.0
    else:
        raise RuntimeError("kkt_general_alloc: boundary bracket growth failed")
    lo = 0.0
    for _ in range(max_outer):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        r, _ = resid0(mid)
        if r > 0.0:
            lo = mid
        else:
            hi = mid
    mu = 0.5 * (lo + hi)
    for _ in range(3):
        r, x = resid0(mu)
        # R0'(mu) = -sum a*(1+x-d)^2 / x^3
        slope = float(np.sum(a[active] * (1.0 + x[active] - d[active]) ** 2 / x[active] ** 3))
        if slope <= 0.0:
            break
        mu_new = mu + r / slope
        if not mu_new > 0.0:
            break
        mu = mu_new
    x = _x_of_mu(mu, d)
    return mu, 0.0, x, 1
