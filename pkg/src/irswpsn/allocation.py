"""Time-slot and power allocation given fixed phase shifts.

Linear case (no sensor circuit power): closed forms, the IRS charging slot
t01, the WET/WIT split t02 via Lambert W, and the proportional uplink slots.
General case (sensor circuit power > 0): nested water-filling KKT solve.
All rates are natural-log internally; callers convert to bits at the edge.
"""

import dataclasses
import math

import numpy as np

from . import kernels

__all__ = [
    "TimeAllocation",
    "GeneralAllocDiag",
    "DegenerateGainsError",
    "t01_star",
    "tau_special",
    "t02_star_special",
    "power_special",
    "general_time_alloc",
    "power_general",
    "reduced_wet_objective",
]


class DegenerateGainsError(ValueError):
    """Every sensor is signal-dead: no positive allocation numerator exists."""


@dataclasses.dataclass(frozen=True)
class TimeAllocation:
    t01: float            # IRS self-charging slot
    t02: float            # IRS-assisted energy-reflection slot
    tau: np.ndarray       # (K,) uplink slots

    @property
    def tau_sum(self):
        return float(np.sum(self.tau))

    @property
    def total(self):
        return self.t01 + self.t02 + self.tau_sum


@dataclasses.dataclass(frozen=True)
class GeneralAllocDiag:
    """KKT diagnostics for the general-case solve."""

    mu1: float
    x: np.ndarray               # per-sensor rate arguments (a_k + t02 b_k)/tau_k
    stationarity: float         # max_k |psi(x_k; d_k) - mu1| over allocated sensors
    coupling: float             # interior: |sum b/(1+x-d) - mu1|; boundary: |sum a/x - S|/S
    boundary: bool              # t02 pinned at zero
    slack: bool                 # time constraint not tight (mu1 = 0)


def t01_star(horizon, n_elements, p_c_irs, eta, p0, g0_norm_sq):
    """Shortest charging slot letting the IRS run its circuits all block long.

    Balances N_R * P_c,IRS * (T - t01) = t01 * eta * P0 * ||g0||^2.  Zero when
    the IRS has no circuit draw; the full horizon when the feeder link is dead.
    """
    load = n_elements * p_c_irs
    if load == 0.0:
        return 0.0
    harvest = eta * p0 * g0_norm_sq
    return load * horizon / (load + harvest)


def tau_special(weights, cbar, s, t01, t02, horizon):
    """Linear-case uplink slots: tau_k proportional to w_k*(cbar_k + t02*s_k).

    weights w_k are the SNR-normalized uplink gains, cbar_k the direct-harvest
    energy coefficients and s_k the reflected-harvest gains.
    """
    w = np.asarray(weights, dtype=float)
    cbar = np.asarray(cbar, dtype=float)
    s = np.asarray(s, dtype=float)
    wit_time = horizon - t01 - t02
    if wit_time < 0:
        raise ValueError("tau_special: t01 + t02 exceed the horizon")
    num = w * (cbar + t02 * s)
    total = float(np.sum(num))
    if total <= 0.0:
        raise DegenerateGainsError("tau_special: all allocation numerators are zero")
    return wit_time * num / total


def t02_star_special(c, s, t_tilde):
    """Optimal energy-reflection slot in the linear case.

    Maximizes (t_tilde - t) * log(1 + (c + t*s)/(t_tilde - t)) over [0, t_tilde):
    interior optimum t = ((x-1)*t_tilde - c)/(s + x - 1) with
    x = exp(W((s-1)/e) + 1); clamped to 0 when the numerator is nonpositive.
    """
    if t_tilde <= 0.0:
        return 0.0
    if c < 0 or s < 0:
        raise ValueError("t02_star_special: negative energy coefficients")
    if s == 0.0:
        return 0.0
    x = math.exp(kernels.lambert_w0((s - 1.0) / math.e) + 1.0)
    num = (x - 1.0) * t_tilde - c
    den = s + x - 1.0
    if num <= 0.0 or den <= 0.0:
        return 0.0
    return num / den


def reduced_wet_objective(c, s, t_tilde):
    """The 1-D objective t -> (t_tilde - t)*log(1 + (c + t*s)/(t_tilde - t)).

    Equals the linear-case sum throughput after the optimal uplink split, so
    it doubles as the oracle target for t02_star_special.
    """

    def f(t):
        rem = t_tilde - t
        if rem <= 0.0:
            return 0.0
        return rem * math.log1p((c + t * s) / rem)

    return f


def power_special(tau, t01, t02, eta, p0, gd_sq, s):
    """Linear-case transmit powers draining each sensor battery exactly.

    P_k = E_k / tau_k with E_k = eta*P0*(t01*|g_dk|^2 + t02*s_k); zero for
    sensors with no uplink slot.
    """
    tau = np.asarray(tau, dtype=float)
    energy = eta * p0 * (t01 * np.asarray(gd_sq, dtype=float) + t02 * np.asarray(s, dtype=float))
    out = np.zeros(tau.shape)
    on = tau > 0
    out[on] = energy[on] / tau[on]
    return out


def general_time_alloc(a, b, d, horizon, t01, tol=1e-10):
    """General-case (t02, tau) from the nested KKT solve.

    a_k, b_k are the direct- and reflected-harvest rate coefficients
    (a_k + t02*b_k)/tau_k = x_k, d_k the circuit-power SNR offsets.  Sensors
    with a_k = b_k = 0 receive tau_k = 0.  Returns (TimeAllocation, diag).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = np.asarray(d, dtype=float)
    if a.shape != b.shape or a.shape != d.shape:
        raise ValueError("general_time_alloc: coefficient shapes differ")
    if np.any(a < 0) or np.any(b < 0) or np.any(d < 0):
        raise ValueError("general_time_alloc: negative coefficients")
    budget = horizon - t01
    if budget <= 0.0:
        raise ValueError("general_time_alloc: no time left after the charging slot")

    k = a.shape[0]
    alive = (a > 0) | (b > 0)
    if not alive.any():
        raise DegenerateGainsError("general_time_alloc: every sensor is dead")

    mu1, t02, x_act, status = kernels.kkt_general_alloc(
        a[alive], b[alive], d[alive], budget, tol=tol)
    x = np.full(k, np.inf)
    x[alive] = x_act

    tau = np.zeros(k)
    num = a + t02 * b
    on = alive & (num > 0)
    tau[on] = num[on] / x[on]

    target = 0.0 if status == 2 else mu1
    if on.any():
        psi = np.log1p(x[on] - d[on]) - x[on] / (1.0 + x[on] - d[on])
        stationarity = float(np.max(np.abs(psi - target)))
    else:
        stationarity = 0.0
    if status == 0:
        coupling = abs(float(np.sum(b[alive] / (1.0 + x[alive] - d[alive]))) - mu1)
    elif status == 1:
        coupling = abs(float(np.sum(tau)) - budget) / budget
    else:
        coupling = 0.0
    diag = GeneralAllocDiag(mu1=mu1, x=x, stationarity=stationarity,
                            coupling=coupling, boundary=status != 0,
                            slack=status == 2)
    return TimeAllocation(t01=t01, t02=t02, tau=tau), diag


def power_general(alloc, eta, p0, gd_sq, s, p_c_sensor):
    """General-case powers: battery drained net of circuit draw.

    P_k = E_k/tau_k - P_c; sensors whose harvest cannot cover the circuit
    draw are flagged and zero-rated (never produced by the KKT solve).
    Returns (powers, negative_mask).
    """
    tau = np.asarray(alloc.tau, dtype=float)
    energy = eta * p0 * (alloc.t01 * np.asarray(gd_sq, dtype=float)
                         + alloc.t02 * np.asarray(s, dtype=float))
    powers = np.zeros(tau.shape)
    on = tau > 0
    powers[on] = energy[on] / tau[on] - p_c_sensor
    negative = powers < 0
    powers[negative] = 0.0
    return powers, negative
