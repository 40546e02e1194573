"""IRS phase-shift selection for the harvesting and uplink slots.

Convention: a phase vector theta holds the diagonal of the reflection matrix,
applied row-style as g0 @ diag(theta) @ g_r = sum_n g0[n] theta[n] g_r[n].
The MM iteration below works on the conjugate v = conj(theta), in which the
linear term gamma = sum_k w_k conj(g_dk) a_k and the update
v <- exp(j arg((upsilon I - Phi) v + gamma)) are coherent; theta = conj(v).
"""

import dataclasses

import numpy as np

__all__ = [
    "PhaseVector",
    "MMTrace",
    "wit_phases",
    "alignment_ratio",
    "wet_phase_mm",
    "quantize_phases",
    "uplink_gain",
    "wet_objective",
]


@dataclasses.dataclass(frozen=True)
class PhaseVector:
    """Unit-modulus reflection coefficients; bits=None means continuous."""

    values: np.ndarray
    bits: int | None = None

    @property
    def kind(self):
        return "continuous" if self.bits is None else f"quantized(b={self.bits})"

    def __len__(self):
        return len(self.values)


@dataclasses.dataclass(frozen=True)
class MMTrace:
    objective: np.ndarray   # minimization-form surrogate objective per iterate
    converged: bool
    n_iter: int


def _unit_phases(z):
    # exp(j arg z) with zero-magnitude entries pinned to phase 0
    out = np.ones(z.shape, dtype=complex)
    nz = z != 0
    out[nz] = z[nz] / np.abs(z[nz])
    return out


def wit_phases(channels):
    """Per-sensor uplink phases aligning every reflected tap with the direct one.

    theta_k[n] = exp(j(arg h_dk - arg(h_k[n] h_r[n]))); attains the triangle
    bound |h_dk| + sum_n |h_k[n] h_r[n]| for the combined uplink channel.
    """
    out = []
    for k in range(channels.n_sensors):
        b = channels.g_r[k] * channels.h_r
        rot = _unit_phases(np.conj(b)) * _unit_phases(np.atleast_1d(channels.h_d[k]))
        rot[b == 0] = 1.0
        out.append(PhaseVector(values=rot))
    return out


def uplink_gain(channels, k, theta):
    """|h_k diag(theta) h_r + h_dk|^2 for sensor k; theta=None means no IRS."""
    if theta is None:
        return float(abs(channels.h_d[k]) ** 2)
    vals = theta.values if isinstance(theta, PhaseVector) else np.asarray(theta)
    b = channels.g_r[k] * channels.h_r
    return float(abs(np.sum(vals * b) + channels.h_d[k]) ** 2)


def alignment_ratio(channels, k, theta):
    """(h_k diag(theta) h_r) / h_dk; real positive at the aligning phases."""
    hd = channels.h_d[k]
    if hd == 0:
        raise ValueError("alignment_ratio: dead direct uplink channel")
    vals = theta.values if isinstance(theta, PhaseVector) else np.asarray(theta)
    b = channels.g_r[k] * channels.h_r
    return complex(np.sum(vals * b) / hd)


def wet_objective(channels, theta, weights):
    """Weighted harvest objective sum_k w_k |g0 diag(theta) g_rk + g_dk|^2."""
    vals = theta.values if isinstance(theta, PhaseVector) else np.asarray(theta)
    a = channels.g0[None, :] * channels.g_r
    comb = a @ vals + channels.g_d
    return float(np.sum(np.asarray(weights) * np.abs(comb) ** 2))


def wet_phase_mm(channels, weights, tol=1e-8, max_iter=500):
    """Shared harvesting phases maximizing the weighted WET objective.

    Minorize-maximize on f(v) = v^H Phi v - 2 Re(v^H gamma) - d1 with
    Phi = -sum_k w_k a_k a_k^H.  Phi is negative semidefinite by
    construction, so lambda_max(Phi) = 0 whenever rank(Phi) < N (the
    operating regime K < N); upsilon = 0 keeps the surrogate a true
    majorizer in every case, giving the update v <- exp(j arg(Phi1 v + gamma)).
    Returns (PhaseVector, MMTrace) with a non-increasing objective trace.
    """
    w = np.asarray(weights, dtype=float)
    if w.shape != (channels.n_sensors,):
        raise ValueError("wet_phase_mm: one weight per sensor required")
    if np.any(w < 0):
        raise ValueError("wet_phase_mm: weights must be nonnegative")
    a = channels.g0[None, :] * channels.g_r          # (K, N), rows a_k
    phi1 = (a * w[:, None]).T @ a.conj()             # sum_k w_k a_k a_k^H
    gamma = (w * np.conj(channels.g_d)) @ a          # (N,)
    d1 = float(np.sum(w * np.abs(channels.g_d) ** 2))

    def fval(v):
        quad = float(np.vdot(v, phi1 @ v).real)
        lin = float(np.vdot(v, gamma).real)
        return -(quad + 2.0 * lin + d1)

    v = _unit_phases(gamma)
    trace = [fval(v)]
    converged = False
    for _ in range(max_iter):
        v = _unit_phases(phi1 @ v + gamma)
        trace.append(fval(v))
        if trace[-2] - trace[-1] <= tol * max(1.0, abs(trace[-2])):
            converged = True
            break
    theta = PhaseVector(values=np.conj(v))
    return theta, MMTrace(objective=np.array(trace), converged=converged,
                          n_iter=len(trace) - 1)


def quantize_phases(theta, bits):
    """Snap each entry to the nearest of 2^bits uniform phase levels.

    Exact angular ties resolve to the lowest level index (so the midpoint
    between the wrap pair 2^bits-1 and 0 snaps to level 0).  Zero-magnitude
    entries take level 0.
    """
    if bits < 1:
        raise ValueError("quantize_phases: bits must be >= 1")
    vals = theta.values if isinstance(theta, PhaseVector) else np.asarray(theta)
    levels = 2 ** bits
    step = 2.0 * np.pi / levels
    ang = np.mod(np.angle(vals), 2.0 * np.pi)
    # tiny negative angles can round the modulo up to exactly 2*pi
    ang = np.where(ang >= 2.0 * np.pi, 0.0, ang)
    low = np.floor(ang / step).astype(int)   # unwrapped; wrapped only at the end
    d_low = ang - low * step
    d_high = (low + 1) * step - ang
    idx = np.where(d_high < d_low, low + 1, low)
    tie = d_high == d_low
    idx = np.where(tie, np.minimum(low % levels, (low + 1) % levels), idx)
    idx = np.where(np.abs(vals) == 0, 0, idx) % levels
    return PhaseVector(values=np.exp(1j * step * idx), bits=int(bits))
