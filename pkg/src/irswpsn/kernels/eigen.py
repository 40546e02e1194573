"""Dominant-eigenpair kernel (numpy in both backends: the hot loop is BLAS)."""

import numpy as np

__all__ = ["max_eigenpair"]


def max_eigenpair(h, tol=1e-10, max_iter=20000):
    """Largest-eigenvalue pair (lam, v) of a Hermitian matrix.

    Power iteration on h + c*I with c = ||h||_F; the Frobenius norm bounds
    the spectral radius, so the shifted matrix is PSD and its dominant
    eigenvalue is the algebraically largest one of h.  Residual on return:
    ||h v - lam v|| <= tol * ||h||_F.  Deterministic seeded start vector.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("max_eigenpair: square matrix required")
    n = h.shape[0]
    scale = float(np.linalg.norm(h))
    if scale == 0.0:
        v = np.zeros(n, dtype=complex)
        v[0] = 1.0
        return 0.0, v
    if np.linalg.norm(h - h.conj().T) > 1e-12 * scale:
        raise ValueError("max_eigenpair: matrix is not Hermitian")

    rng = np.random.default_rng(0x5EED)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    for _ in range(max_iter):
        hv = h @ v
        lam = float(np.vdot(v, hv).real)
        if np.linalg.norm(hv - lam * v) <= tol * scale:
            return lam, v
        w = hv + scale * v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            # v sits in the nullspace of the shifted matrix; reseed
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            v /= np.linalg.norm(v)
            continue
        v = w / nw
    raise RuntimeError("max_eigenpair: power iteration did not converge")
