"""End-to-end transmission policies: proposed scheme and benchmarks.

Pipeline per realization: closed-form uplink phases, MM harvesting phases
weighted by the uplink SNR gains, the IRS charging slot t01, then the
time/power allocation (closed forms when sensors pay no circuit power,
nested KKT otherwise).  Benchmarks reuse the same allocation machinery with
their own phases / effective circuit powers.
"""

import dataclasses
import math

import numpy as np

from . import allocation as alloc_mod
from .allocation import DegenerateGainsError, TimeAllocation
from .channel import LINK_PHASES, link_rng
from .phase import PhaseVector, quantize_phases, uplink_gain, wet_phase_mm, wit_phases

__all__ = [
    "LinkGains",
    "PolicySolution",
    "FeasibilityReport",
    "solve_special",
    "solve_general",
    "benchmark_random_phase",
    "benchmark_no_irs",
    "benchmark_upper_bound",
    "sum_throughput",
    "audit_feasibility",
    "SCHEME_TAGS",
]

SCHEME_TAGS = ("lc-special", "lc-general", "random-phase", "no-irs", "upper-bound")
_LN2 = math.log(2.0)


@dataclasses.dataclass(frozen=True)
class LinkGains:
    """Effective scalar gains after fixing the phase shifts."""

    c: np.ndarray          # (K,) uplink combined power gains
    s: np.ndarray          # (K,) WET combined power gains
    gd_sq: np.ndarray      # (K,) direct ES->sensor power gains
    g0_norm_sq: float      # feeder ||g0||^2


@dataclasses.dataclass(frozen=True)
class PolicySolution:
    scheme: str
    alloc: TimeAllocation
    powers: np.ndarray
    rates_nats: np.ndarray
    throughput_nats: float
    throughput_bits: float
    gains: LinkGains
    theta_wet: PhaseVector | None
    theta_wit: list | None
    mm_iters: int
    diag: alloc_mod.GeneralAllocDiag | None
    negative_power: np.ndarray


@dataclasses.dataclass(frozen=True)
class FeasibilityReport:
    ok: bool
    sensor_energy_rel: np.ndarray   # (tau_k (P_k + P_ck) - E_k) / scale, <= tol feasible
    irs_energy_rel: float
    time_rel: float
    min_tau: float
    min_power: float
    tol: float


def _wet_gains(channels, theta_wet):
    if theta_wet is None:
        return np.abs(channels.g_d) ** 2
    vals = theta_wet.values
    comb = (channels.g0[None, :] * channels.g_r) @ vals + channels.g_d
    return np.abs(comb) ** 2


def _uplink_gains(channels, theta_wit):
    k = channels.n_sensors
    if theta_wit is None:
        return np.abs(channels.h_d) ** 2
    return np.array([uplink_gain(channels, i, theta_wit[i]) for i in range(k)])


def _lc_phases(channels, cfg):
    """Continuous phase pipeline, then optional post-hoc quantization."""
    wit = wit_phases(channels)
    c_cont = _uplink_gains(channels, wit)
    weights = c_cont * cfg.eta * cfg.p0_watts / cfg.noise_watts
    wet, trace = wet_phase_mm(channels, weights, tol=cfg.mm_tol, max_iter=cfg.mm_max_iter)
    if cfg.quant_bits is not None:
        wit = [quantize_phases(t, cfg.quant_bits) for t in wit]
        wet = quantize_phases(wet, cfg.quant_bits)
    return wit, wet, trace.n_iter


def _zero_solution(scheme, channels, cfg, t01, gains, theta_wit, theta_wet, mm_iters):
    k = channels.n_sensors
    return PolicySolution(
        scheme=scheme,
        alloc=TimeAllocation(t01=t01, t02=0.0, tau=np.zeros(k)),
        powers=np.zeros(k), rates_nats=np.zeros(k),
        throughput_nats=0.0, throughput_bits=0.0,
        gains=gains, theta_wet=theta_wet, theta_wit=theta_wit,
        mm_iters=mm_iters, diag=None,
        negative_power=np.zeros(k, dtype=bool))


def _solve_with_phases(channels, cfg, theta_wit, theta_wet, scheme, *,
                       general, p_c_irs_eff, mm_iters):
    noise = cfg.noise_watts
    p0 = cfg.p0_watts
    horizon = cfg.horizon
    c = _uplink_gains(channels, theta_wit)
    s = _wet_gains(channels, theta_wet)
    gd_sq = np.abs(channels.g_d) ** 2
    g0_norm_sq = float(np.vdot(channels.g0, channels.g0).real)
    gains = LinkGains(c=c, s=s, gd_sq=gd_sq, g0_norm_sq=g0_norm_sq)

    t01 = alloc_mod.t01_star(horizon, channels.n_elements, p_c_irs_eff, cfg.eta, p0, g0_norm_sq)
    if horizon - t01 <= 0.0:
        return _zero_solution(scheme, channels, cfg, t01, gains, theta_wit, theta_wet, mm_iters)

    ctilde = c * cfg.eta * p0 / noise
    cbar = t01 * gd_sq
    negative = np.zeros(channels.n_sensors, dtype=bool)
    diag = None
    try:
        if general:
            a = ctilde * cbar
            b = ctilde * s
            d = cfg.p_c_sensor * c / noise
            ta, diag = alloc_mod.general_time_alloc(a, b, d, horizon, t01, tol=cfg.bisect_tol)
            powers, negative = alloc_mod.power_general(ta, cfg.eta, p0, gd_sq, s, cfg.p_c_sensor)
        else:
            c_sum = float(np.sum(ctilde * cbar))
            s_sum = float(np.sum(ctilde * s))
            t02 = alloc_mod.t02_star_special(c_sum, s_sum, horizon - t01)
            tau = alloc_mod.tau_special(ctilde, cbar, s, t01, t02, horizon)
            ta = TimeAllocation(t01=t01, t02=t02, tau=tau)
            powers = alloc_mod.power_special(tau, t01, t02, cfg.eta, p0, gd_sq, s)
    except DegenerateGainsError:
        return _zero_solution(scheme, channels, cfg, t01, gains, theta_wit, theta_wet, mm_iters)

    rates = ta.tau * np.log1p(powers * c / noise)
    total = float(np.sum(rates))
    return PolicySolution(
        scheme=scheme, alloc=ta, powers=powers, rates_nats=rates,
        throughput_nats=total, throughput_bits=total / _LN2,
        gains=gains, theta_wet=theta_wet, theta_wit=theta_wit,
        mm_iters=mm_iters, diag=diag, negative_power=negative)


def solve_special(channels, cfg):
    """Proposed scheme, linear case (sensors pay no circuit power)."""
    if cfg.p_c_sensor != 0.0:
        raise ValueError("solve_special: p_c_sensor must be 0 (use solve_general)")
    wit, wet, iters = _lc_phases(channels, cfg)
    return _solve_with_phases(channels, cfg, wit, wet, "lc-special",
                              general=False, p_c_irs_eff=cfg.p_c_irs, mm_iters=iters)


def solve_general(channels, cfg):
    """Proposed scheme with per-sensor circuit power (KKT allocation)."""
    wit, wet, iters = _lc_phases(channels, cfg)
    return _solve_with_phases(channels, cfg, wit, wet, "lc-general",
                              general=True, p_c_irs_eff=cfg.p_c_irs, mm_iters=iters)


def _auto_general(cfg):
    return cfg.p_c_sensor > 0.0


def benchmark_random_phase(channels, cfg, seed):
    """Uniform random phase shifts, same allocation machinery."""
    rng = link_rng(seed, LINK_PHASES)
    n, k = channels.n_elements, channels.n_sensors
    wet = PhaseVector(values=np.exp(2j * np.pi * rng.random(n)))
    wit = [PhaseVector(values=np.exp(2j * np.pi * rng.random(n))) for _ in range(k)]
    return _solve_with_phases(channels, cfg, wit, wet, "random-phase",
                              general=_auto_general(cfg), p_c_irs_eff=cfg.p_c_irs,
                              mm_iters=0)


def benchmark_no_irs(channels, cfg):
    """No surface at all: direct links only, single WET slot."""
    return _solve_with_phases(channels, cfg, None, None, "no-irs",
                              general=_auto_general(cfg), p_c_irs_eff=0.0,
                              mm_iters=0)


def benchmark_upper_bound(channels, cfg):
    """Ideal IRS with free circuits (t01 = 0); bounds the proposed scheme."""
    wit, wet, iters = _lc_phases(channels, cfg)
    return _solve_with_phases(channels, cfg, wit, wet, "upper-bound",
                              general=_auto_general(cfg), p_c_irs_eff=0.0,
                              mm_iters=iters)


def sum_throughput(solution, channels, noise_watts):
    """Recompute the objective from raw channels, phases, slots and powers."""
    c = _uplink_gains(channels, solution.theta_wit)
    rates = solution.alloc.tau * np.log1p(solution.powers * c / noise_watts)
    return float(np.sum(rates))


def _eff_p_c_irs(solution, cfg):
    return cfg.p_c_irs if solution.scheme in ("lc-special", "lc-general", "random-phase") else 0.0


def audit_feasibility(solution, channels, cfg, tol=1e-9):
    """Check every constraint of the solution against raw channel values."""
    ta = solution.alloc
    eta, p0 = cfg.eta, cfg.p0_watts
    s = _wet_gains(channels, solution.theta_wet)
    gd_sq = np.abs(channels.g_d) ** 2
    energy = eta * p0 * (ta.t01 * gd_sq + ta.t02 * s)
    spend = ta.tau * (solution.powers + cfg.p_c_sensor)
    scale_e = np.maximum(energy, np.max(energy, initial=0.0) * 1e-6) + 1e-300
    sensor_rel = (spend - energy) / scale_e

    p_c_irs = _eff_p_c_irs(solution, cfg)
    g0_norm_sq = float(np.vdot(channels.g0, channels.g0).real)
    lhs = channels.n_elements * p_c_irs * (ta.t02 + ta.tau_sum)
    rhs = ta.t01 * eta * p0 * g0_norm_sq
    irs_rel = (lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)

    time_rel = (ta.total - cfg.horizon) / cfg.horizon

    ok = bool(
        np.all(sensor_rel <= tol)
        and irs_rel <= tol
        and time_rel <= tol
        and ta.t01 >= 0.0 and ta.t02 >= 0.0
        and np.all(ta.tau >= 0.0) and np.all(solution.powers >= 0.0)
    )
    return FeasibilityReport(
        ok=ok, sensor_energy_rel=sensor_rel, irs_energy_rel=float(irs_rel),
        time_rel=float(time_rel), min_tau=float(np.min(ta.tau)),
        min_power=float(np.min(solution.powers)), tol=tol)
