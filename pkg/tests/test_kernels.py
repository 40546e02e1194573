"""Kernel tests, run against both the pure and the compiled backend."""

import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

import irswpsn.kernels as kernels
from irswpsn.kernels import pure
from irswpsn.kernels.eigen import max_eigenpair

_BACKENDS = [pure]
_IDS = ["pure"]
try:
    from irswpsn.kernels import _core

    _BACKENDS.append(_core)
    _IDS.append("compiled")
except ImportError:
    pass


@pytest.fixture(params=_BACKENDS, ids=_IDS)
def kern(request):
    return request.param


def test_backend_announced():
    assert kernels.BACKEND in ("pure", "compiled")
    assert callable(kernels.lambert_w0)


# ---------------------------------------------------------------- lambert_w0

# reference values computed with mpmath.lambertw at 40 digits
_W_REF = [
    (0.5, 0.35173371124919582602),
    (2.0, 0.85260550201372549135),
    (10.0, 1.7455280027406993831),
    (1e6, 11.383358086140052622),
    (-0.25, -0.35740295618138890307),
]


def test_lambert_reference_values(kern):
    for x, w_ref in _W_REF:
        assert kern.lambert_w0(x) == pytest.approx(w_ref, rel=1e-14, abs=1e-14)


def test_lambert_exact_points(kern):
    assert kern.lambert_w0(0.0) == 0.0
    assert kern.lambert_w0(math.e) == pytest.approx(1.0, abs=1e-14)
    assert kern.lambert_w0(-1.0 / math.e) == pytest.approx(-1.0, abs=1e-7)


def test_lambert_domain_error(kern):
    with pytest.raises(ValueError):
        kern.lambert_w0(-0.5)
    with pytest.raises(ValueError):
        kern.lambert_w0(float("nan"))


def test_lambert_matches_scipy(kern):
    xs = np.concatenate([
        -1.0 / math.e + np.logspace(-12, -0.5, 25),
        np.logspace(-8, 8, 40),
    ])
    for x in xs:
        ours = kern.lambert_w0(float(x))
        ref = float(scipy.special.lambertw(x).real)
        assert ours == pytest.approx(ref, rel=1e-10, abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-1.0 / math.e + 1e-9, max_value=1e12))
def test_lambert_residual_property(x):
    w = pure.lambert_w0(x)
    assert w >= -1.0
    assert abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, abs(x))


def test_lambert_residual_property_compiled():
    if len(_BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    rng = np.random.default_rng(7)
    xs = np.exp(rng.uniform(-18, 18, size=500)) - 1.0 / math.e + 1e-12
    for x in xs:
        w = _core.lambert_w0(float(x))
        assert abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, abs(x))


# -------------------------------------------------------- scalar 1-D solvers

def test_golden_section_quadratic(kern):
    x, fx = kern.golden_section_max(lambda t: -(t - 0.3) ** 2, 0.0, 1.0, tol=1e-10)
    assert x == pytest.approx(0.3, abs=1e-9)
    assert fx == pytest.approx(0.0, abs=1e-17)


def test_golden_section_endpoint_max(kern):
    # monotone increasing on the interval, optimum pinned at the right edge
    x, _ = kern.golden_section_max(lambda t: t, 0.0, 2.0, tol=1e-10)
    assert x == pytest.approx(2.0, abs=1e-9)


def test_golden_section_bad_interval(kern):
    with pytest.raises(ValueError):
        kern.golden_section_max(lambda t: t, 1.0, 1.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-5, max_value=5), st.floats(min_value=0.01, max_value=10))
def test_golden_section_concave_property(center, width):
    lo, hi = center - width, center + width
    peak = center + 0.3 * width

    x, _ = pure.golden_section_max(lambda t: -((t - peak) ** 2), lo, hi, tol=1e-11)
    assert abs(x - peak) <= 1e-8 * max(1.0, abs(peak)) + 1e-9


def test_bisect_root_cube(kern):
    r = kern.bisect_root(lambda t: t ** 3 - 2.0, 0.0, 2.0, tol=1e-12)
    assert r == pytest.approx(2.0 ** (1.0 / 3.0), abs=1e-11)


def test_bisect_root_requires_sign_change(kern):
    with pytest.raises(ValueError):
        kern.bisect_root(lambda t: t + 10.0, 0.0, 1.0)


# ------------------------------------------------------------ kkt allocation

def _psi(x, d):
    return np.log1p(x - d) - x / (1.0 + x - d)


# frozen interior instance, solved independently with mpmath nested findroot
_KKT_A = [1.0, 2.0]
_KKT_B = [3.0, 1.0]
_KKT_D = [0.5, 0.2]
_KKT_BUDGET = 4.0
_KKT_MU1 = 0.76513696112240897
_KKT_X = [4.81811364163528552, 4.17445207467120611]
_KKT_T02 = 1.77926123187719647


def test_kkt_interior_frozen(kern):
    mu1, t02, x, status = kern.kkt_general_alloc(
        np.array(_KKT_A), np.array(_KKT_B), np.array(_KKT_D), _KKT_BUDGET)
    assert status == 0
    assert mu1 == pytest.approx(_KKT_MU1, abs=1e-9)
    assert t02 == pytest.approx(_KKT_T02, abs=1e-8)
    assert np.allclose(x, _KKT_X, atol=1e-8)


def test_kkt_boundary_frozen(kern):
    # direct-harvest terms dominate, the reflection slot pins at zero
    mu1, t02, x, status = kern.kkt_general_alloc(
        np.array([30.0, 10.0]), np.array([0.1, 0.2]), np.array([0.0, 0.3]), 4.0)
    assert status == 1
    assert t02 == 0.0
    assert mu1 == pytest.approx(1.47639918802291256, abs=1e-9)
    assert np.allclose(x, [9.85081523394491207, 10.4759564806526938], atol=1e-8)
    assert np.sum(np.array([30.0, 10.0]) / x) == pytest.approx(4.0, rel=1e-10)


def test_kkt_slack_branch(kern):
    # no reflected harvest at all and every sensor pays circuit power: the
    # per-sensor optima fit inside a generous budget, time constraint slack
    a = np.array([1e-3, 2e-3])
    b = np.zeros(2)
    d = np.array([0.4, 0.9])
    mu1, t02, x, status = kern.kkt_general_alloc(a, b, d, 1e9)
    assert status == 2
    assert mu1 == 0.0
    assert t02 == 0.0
    assert np.all(np.abs(_psi(x, d)) <= 1e-9)


def test_kkt_residuals_random(kern):
    rng = np.random.default_rng(42)
    for _ in range(30):
        k = rng.integers(1, 8)
        a = rng.uniform(0.0, 5.0, k)
        b = rng.uniform(0.0, 5.0, k)
        a[rng.random(k) < 0.2] = 0.0
        keep = (a > 0) | (b > 0)
        if not keep.any():
            continue
        a, b = a[keep], b[keep]
        d = rng.uniform(0.0, 1.5, a.shape[0])
        budget = rng.uniform(0.5, 20.0)
        mu1, t02, x, status = kern.kkt_general_alloc(a, b, d, budget)
        assert t02 >= 0.0
        assert np.all(x > d)
        tau = (a + t02 * b) / x
        if status == 0:
            assert np.max(np.abs(_psi(x, d) - mu1)) <= 1e-8
            assert abs(np.sum(b / (1.0 + x - d)) - mu1) <= 1e-8
            assert t02 + np.sum(tau) == pytest.approx(budget, rel=1e-9)
        elif status == 1:
            on = a > 0
            assert np.max(np.abs(_psi(x[on], d[on]) - mu1)) <= 1e-8
            assert np.sum(a[on] / x[on]) == pytest.approx(budget, rel=1e-8)
        else:
            assert mu1 == 0.0
            assert np.sum(tau) <= budget * (1 + 1e-12)


def test_kkt_huge_budget_saturation(kern):
    # with b = 0, d = 0 the stationarity root saturates the float range
    # instead of hanging; the boundary branch still balances the budget
    a = np.array([1.0])
    mu1, t02, x, status = kern.kkt_general_alloc(a, np.zeros(1), np.zeros(1), 1e250)
    assert status in (0, 1)
    assert np.isfinite(mu1)


def test_backends_agree_on_kkt():
    if len(_BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    rng = np.random.default_rng(3)
    for _ in range(20):
        k = rng.integers(1, 6)
        a = rng.uniform(0.01, 5.0, k)
        b = rng.uniform(0.0, 5.0, k)
        d = rng.uniform(0.0, 1.0, k)
        budget = rng.uniform(0.5, 10.0)
        got_p = pure.kkt_general_alloc(a, b, d, budget)
        got_c = _core.kkt_general_alloc(a, b, d, budget)
        assert got_p[3] == got_c[3]
        assert got_p[0] == pytest.approx(got_c[0], abs=1e-9)
        assert got_p[1] == pytest.approx(got_c[1], abs=1e-8)
        assert np.allclose(got_p[2], got_c[2], atol=1e-7, rtol=1e-9)


# -------------------------------------------------------------- eigen kernel

def test_eigen_diagonal():
    lam, v = max_eigenpair(np.diag([1.0, 3.0, 2.0]))
    assert lam == pytest.approx(3.0, abs=1e-10)
    assert np.abs(v[1]) == pytest.approx(1.0, abs=1e-8)


def test_eigen_zero_matrix():
    lam, v = max_eigenpair(np.zeros((4, 4)))
    assert lam == 0.0
    assert np.linalg.norm(v) == pytest.approx(1.0)


def test_eigen_rejects_nonhermitian():
    with pytest.raises(ValueError):
        max_eigenpair(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigen_vs_full_decomposition():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(2, 17))
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = z + z.conj().T
        lam, v = max_eigenpair(h, tol=1e-12)
        ref = float(np.linalg.eigvalsh(h)[-1])
        assert lam == pytest.approx(ref, abs=1e-8 * max(1.0, abs(ref)))
        assert np.linalg.norm(h @ v - lam * v) <= 1e-10 * np.linalg.norm(h)


def test_eigen_negative_definite():
    # algebraically largest eigenvalue, not largest in magnitude
    lam, _ = max_eigenpair(np.diag([-5.0, -1.0, -9.0]))
    assert lam == pytest.approx(-1.0, abs=1e-9)
