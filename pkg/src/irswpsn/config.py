"""System configuration: schema, defaults, JSON loading."""

import dataclasses
import json
import logging
import math

logger = logging.getLogger("irswpsn")

__all__ = ["SystemConfig", "load_config", "dbm_to_watts"]


def dbm_to_watts(x):
    return 10.0 ** ((x - 30.0) / 10.0)


@dataclasses.dataclass(frozen=True)
class SystemConfig:
    """Scenario parameters.  Powers configured in dBm where noted, watts otherwise."""

    horizon: float = 1.0              # transmission block T, seconds
    n_elements: int = 30              # IRS elements N_R
    n_sensors: int = 6                # sensors K
    p0_dbm: float = 30.0              # energy-station transmit power
    noise_dbm: float = -100.0         # receiver noise power
    eta: float = 0.8                  # harvester efficiency
    p_c_irs: float = 1e-5             # per-element IRS circuit power, W
    p_c_sensor: float = 1e-5          # per-sensor circuit power, W (0 -> linear case)
    quant_bits: int | None = None     # phase-shift resolution; None -> continuous
    es_x: float = -10.0               # energy station at (es_x, 0, 0)
    ap_x: float = 10.0                # access point at (ap_x, 0, 0)
    irs_x: float = -2.0               # IRS at (irs_x, irs_y, 0)
    irs_y: float = 6.0
    sensor_spacing: float = 1.0       # d_I between adjacent sensors, m
    rician_k_db: float = 6.0          # Rician factor for IRS links
    pathloss_ref_db: float = -20.0    # path loss at 1 m
    pathloss_exp: float = 2.2
    element_spacing: float = 0.5      # IRS element pitch over wavelength
    steering_uses_cos: bool = False   # apply cos() to the AoA before steering
    eig_tol: float = 1e-10
    golden_tol: float = 1e-9          # absolute, same unit as the horizon
    bisect_tol: float = 1e-10
    mm_tol: float = 1e-8              # relative objective-change stop
    mm_max_iter: int = 500

    def __post_init__(self):
        if self.horizon <= 0:
            raise ValueError("horizon must be positive")
        if self.n_elements < 1 or self.n_sensors < 1:
            raise ValueError("n_elements and n_sensors must be >= 1")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must lie in (0, 1]")
        if self.p_c_irs < 0 or self.p_c_sensor < 0:
            raise ValueError("circuit powers must be nonnegative")
        if self.quant_bits is not None and self.quant_bits < 1:
            raise ValueError("quant_bits must be >= 1 or null")
        if self.sensor_spacing <= 0 or self.element_spacing <= 0:
            raise ValueError("spacings must be positive")
        if self.pathloss_exp <= 0:
            raise ValueError("pathloss_exp must be positive")
        for name in ("eig_tol", "golden_tol", "bisect_tol", "mm_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.mm_max_iter < 1:
            raise ValueError("mm_max_iter must be >= 1")

    @property
    def p0_watts(self):
        return dbm_to_watts(self.p0_dbm)

    @property
    def noise_watts(self):
        return dbm_to_watts(self.noise_dbm)

    @property
    def rician_k(self):
        return 10.0 ** (self.rician_k_db / 10.0)

    @property
    def pathloss_ref(self):
        return 10.0 ** (self.pathloss_ref_db / 10.0)


_FIELDS = {f.name: f for f in dataclasses.fields(SystemConfig)}
_INT_KEYS = {"n_elements", "n_sensors", "mm_max_iter", "quant_bits"}
_BOOL_KEYS = {"steering_uses_cos"}


def load_config(path=None, overrides=None):
    """Build a SystemConfig from a flat JSON object file plus overrides.

    Unknown keys are rejected by name.  A missing pathloss_exp falls back to
    the documented default (2.2) with an INFO notice, since measurement
    campaigns rarely pin it down.
    """
    data = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"config {path}: invalid JSON ({exc})") from exc
        if not isinstance(data, dict):
            raise ValueError(f"config {path}: top level must be a JSON object")
    if overrides:
        data = {**data, **overrides}

    unknown = sorted(set(data) - set(_FIELDS))
    if unknown:
        raise ValueError(f"config: unknown keys {', '.join(unknown)}")

    if path is not None and "pathloss_exp" not in data:
        logger.info("config %s: pathloss_exp not given, using default 2.2", path)

    clean = {}
    for key, value in data.items():
        if key in _BOOL_KEYS:
            if not isinstance(value, bool):
                raise ValueError(f"config: {key} must be true/false")
        elif key in _INT_KEYS:
            if value is None and key == "quant_bits":
                pass
            elif not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"config: {key} must be an integer")
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"config: {key} must be a number")
            value = float(value)
        if value is not None and not isinstance(value, bool) and not math.isfinite(value):
            raise ValueError(f"config: {key} must be finite")
        clean[key] = value
    return SystemConfig(**clean)
