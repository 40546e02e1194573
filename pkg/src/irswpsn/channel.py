"""Channel synthesis: geometry, path loss, steering vectors, fading draws.

Every link gets its own PCG64 stream keyed by (seed, link code, sensor index),
so draws are order-independent across links and element draws are
prefix-stable as the IRS grows.
"""

import csv
import dataclasses
import math

import numpy as np

__all__ = [
    "ChannelSet",
    "path_loss",
    "los_steering",
    "sensor_positions",
    "synth_channels",
    "dump_channels",
    "link_rng",
]

# link codes for stream splitting (code 6 reserved: random-phase draws)
LINK_G0 = 1     # energy station -> IRS
LINK_HR = 2     # IRS -> access point
LINK_GR = 3     # IRS -> sensor k (reciprocal of the uplink sensor -> IRS)
LINK_GD = 4     # energy station -> sensor k
LINK_HD = 5     # sensor k -> access point
LINK_PHASES = 6


def link_rng(seed, code, index=0):
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, code, index))))


def path_loss(distance, exponent, ref_db=-20.0):
    """Linear power attenuation 10^(ref_db/10) * distance^-exponent."""
    if distance <= 0:
        raise ValueError("path_loss: distance must be positive")
    return 10.0 ** (ref_db / 10.0) * distance ** -exponent


def los_steering(n, phi, spacing=0.5):
    """Line-of-sight array response [exp(-j*2*pi*spacing*m*phi)]_{m=0..n-1}."""
    m = np.arange(n)
    return np.exp(-2j * np.pi * spacing * m * phi)


def sensor_positions(n_sensors, spacing):
    """Sensors straddle the origin on the z axis, spacing apart.

    Order: +d/2, -d/2, +3d/2, -3d/2, ...
    """
    pos = np.zeros((n_sensors, 3))
    for i in range(n_sensors):
        l = i + 1
        z = l * spacing / 2.0 if l % 2 == 1 else -(l - 1) * spacing / 2.0
        pos[i, 2] = z
    return pos


@dataclasses.dataclass(frozen=True)
class ChannelSet:
    """One fading realization plus the geometry it was drawn on."""

    g0: np.ndarray        # (N,)  ES -> IRS
    h_r: np.ndarray       # (N,)  IRS -> AP
    g_r: np.ndarray       # (K,N) IRS -> sensor; uplink sensor -> IRS is its transpose
    g_d: np.ndarray       # (K,)  ES -> sensor
    h_d: np.ndarray       # (K,)  sensor -> AP
    es_pos: np.ndarray
    ap_pos: np.ndarray
    irs_pos: np.ndarray
    sensor_pos: np.ndarray  # (K,3)
    seed: int

    @property
    def n_elements(self):
        return self.g0.shape[0]

    @property
    def n_sensors(self):
        return self.g_d.shape[0]


def _aoa(endpoint, irs_pos, distance, use_cos):
    # angle seen at the IRS toward the endpoint, from the x offset
    cos_phi = (endpoint[0] - irs_pos[0]) / distance
    cos_phi = min(1.0, max(-1.0, cos_phi))
    return cos_phi if use_cos else math.acos(cos_phi)


def _cscg(rng, n):
    z = rng.standard_normal((n, 2))
    return (z[:, 0] + 1j * z[:, 1]) / math.sqrt(2.0)


def _rician_vector(rng, n, phi, spacing, k_factor, pl):
    los = los_steering(n, phi, spacing)
    nlos = _cscg(rng, n)
    mix = math.sqrt(k_factor / (k_factor + 1.0)) * los + math.sqrt(1.0 / (k_factor + 1.0)) * nlos
    return math.sqrt(pl) * mix


def synth_channels(cfg, seed):
    """Draw one ChannelSet for the configured geometry.

    IRS-adjacent links are Rician with a steering-vector LOS part; direct
    links are circularly symmetric Gaussian.  E[|entry|^2] equals the link
    path loss for every channel.
    """
    n, k = cfg.n_elements, cfg.n_sensors
    es = np.array([cfg.es_x, 0.0, 0.0])
    ap = np.array([cfg.ap_x, 0.0, 0.0])
    irs = np.array([cfg.irs_x, cfg.irs_y, 0.0])
    sensors = sensor_positions(k, cfg.sensor_spacing)
    kf = cfg.rician_k
    sp = cfg.element_spacing
    ref = cfg.pathloss_ref_db
    exp_ = cfg.pathloss_exp
    cos_mode = cfg.steering_uses_cos

    d_es_irs = float(np.linalg.norm(es - irs))
    d_irs_ap = float(np.linalg.norm(ap - irs))
    g0 = _rician_vector(
        link_rng(seed, LINK_G0), n, _aoa(es, irs, d_es_irs, cos_mode), sp, kf,
        path_loss(d_es_irs, exp_, ref))
    h_r = _rician_vector(
        link_rng(seed, LINK_HR), n, _aoa(ap, irs, d_irs_ap, cos_mode), sp, kf,
        path_loss(d_irs_ap, exp_, ref))

    g_r = np.empty((k, n), dtype=complex)
    g_d = np.empty(k, dtype=complex)
    h_d = np.empty(k, dtype=complex)
    for i in range(k):
        s = sensors[i]
        d_irs_s = float(np.linalg.norm(s - irs))
        g_r[i] = _rician_vector(
            link_rng(seed, LINK_GR, i), n, _aoa(s, irs, d_irs_s, cos_mode), sp, kf,
            path_loss(d_irs_s, exp_, ref))
        d_es_s = float(np.linalg.norm(s - es))
        g_d[i] = math.sqrt(path_loss(d_es_s, exp_, ref)) * _cscg(link_rng(seed, LINK_GD, i), 1)[0]
        d_s_ap = float(np.linalg.norm(ap - s))
        h_d[i] = math.sqrt(path_loss(d_s_ap, exp_, ref)) * _cscg(link_rng(seed, LINK_HD, i), 1)[0]

    return ChannelSet(g0=g0, h_r=h_r, g_r=g_r, g_d=g_d, h_d=h_d,
                      es_pos=es, ap_pos=ap, irs_pos=irs, sensor_pos=sensors,
                      seed=seed)


def dump_channels(channels, path):
    """Serialize one realization as a flat text table: link, element, re, im."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["link", "element", "re", "im"])

        def rows(label, vec):
            for m, val in enumerate(np.atleast_1d(vec)):
                w.writerow([label, m, repr(float(val.real)), repr(float(val.imag))])

        rows("g0", channels.g0)
        rows("h_r", channels.h_r)
        for i in range(channels.n_sensors):
            rows(f"g_r[{i}]", channels.g_r[i])
        for i in range(channels.n_sensors):
            rows(f"g_d[{i}]", channels.g_d[i])
        for i in range(channels.n_sensors):
            rows(f"h_d[{i}]", channels.h_d[i])
