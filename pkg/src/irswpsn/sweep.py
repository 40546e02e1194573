"""Parameter sweeps over paired channel realizations, with CSV output."""

import csv
import dataclasses
import logging
import math
import re
import time

from .channel import synth_channels
from .config import SystemConfig
from .policy import (benchmark_no_irs, benchmark_random_phase,
                     benchmark_upper_bound, solve_general, solve_special)

logger = logging.getLogger("irswpsn")

__all__ = ["SweepSpec", "ResultRecord", "run_scheme", "run_sweep", "emit_csv",
           "CSV_COLUMNS", "SCHEME_NAMES"]

CSV_COLUMNS = ["param", "value", "scheme", "trial", "seed", "throughput_nats",
               "throughput_bits", "t01", "t02", "tau_sum", "mm_iters", "elapsed_ms"]

# sweep-level scheme names; lc-b<N> is lc with N-bit quantized phases
SCHEME_NAMES = ("lc", "random-phase", "no-irs", "upper-bound")
_LC_RE = re.compile(r"lc(?:-b([0-9]+))?\Z")

_INT_FIELDS = {"n_elements", "n_sensors", "mm_max_iter"}
_SWEEPABLE = {f.name for f in dataclasses.fields(SystemConfig)}


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    param: str
    values: tuple
    schemes: tuple
    trials: int = 1
    base_seed: int = 0

    def __post_init__(self):
        if self.param not in _SWEEPABLE:
            raise ValueError(f"sweep: unknown parameter {self.param!r}")
        if not self.values:
            raise ValueError("sweep: empty value list")
        if self.trials < 1:
            raise ValueError("sweep: trials must be >= 1")
        for s in self.schemes:
            if s not in SCHEME_NAMES and not _LC_RE.match(s):
                raise ValueError(f"sweep: unknown scheme {s!r}")


@dataclasses.dataclass(frozen=True)
class ResultRecord:
    param: str
    value: float
    scheme: str
    trial: int
    seed: int
    throughput_nats: float
    throughput_bits: float
    t01: float
    t02: float
    tau_sum: float
    mm_iters: int
    elapsed_ms: float


def apply_param(cfg, param, value):
    if param not in _SWEEPABLE:
        raise ValueError(f"sweep: unknown parameter {param!r}")
    if param in _INT_FIELDS:
        if value != int(value):
            raise ValueError(f"sweep: {param} needs integer values, got {value!r}")
        value = int(value)
    return dataclasses.replace(cfg, **{param: value})


def run_scheme(name, channels, cfg, seed):
    """Solve one scheme by sweep-level name on a given realization."""
    if name == "random-phase":
        return benchmark_random_phase(channels, cfg, seed)
    if name == "no-irs":
        return benchmark_no_irs(channels, cfg)
    if name == "upper-bound":
        return benchmark_upper_bound(channels, cfg)
    m = _LC_RE.match(name)
    if not m:
        raise ValueError(f"unknown scheme {name!r}")
    if m.group(1) is not None:
        cfg = dataclasses.replace(cfg, quant_bits=int(m.group(1)))
    if cfg.p_c_sensor == 0.0:
        return solve_special(channels, cfg)
    return solve_general(channels, cfg)


def run_sweep(spec, base_cfg):
    """All (value, scheme, trial) records; trials share channels across schemes.

    Channels for trial i are drawn with seed base_seed + i, so every scheme
    at a given (value, trial) sees the same realization.  Per-record failures
    are captured as NaN throughput and the sweep continues.
    """
    records = []
    for value in spec.values:
        cfg_v = apply_param(base_cfg, spec.param, value)
        for trial in range(spec.trials):
            seed = spec.base_seed + trial
            channels = synth_channels(cfg_v, seed)
            for scheme in spec.schemes:
                start = time.perf_counter()
                try:
                    sol = run_scheme(scheme, channels, cfg_v, seed)
                    elapsed = (time.perf_counter() - start) * 1e3
                    rec = ResultRecord(
                        param=spec.param, value=float(value), scheme=scheme,
                        trial=trial, seed=seed,
                        throughput_nats=sol.throughput_nats,
                        throughput_bits=sol.throughput_bits,
                        t01=sol.alloc.t01, t02=sol.alloc.t02,
                        tau_sum=sol.alloc.tau_sum, mm_iters=sol.mm_iters,
                        elapsed_ms=elapsed)
                except Exception:
                    logger.warning("sweep: %s failed at %s=%r trial %d",
                                   scheme, spec.param, value, trial, exc_info=True)
                    elapsed = (time.perf_counter() - start) * 1e3
                    rec = ResultRecord(
                        param=spec.param, value=float(value), scheme=scheme,
                        trial=trial, seed=seed,
                        throughput_nats=math.nan, throughput_bits=math.nan,
                        t01=math.nan, t02=math.nan, tau_sum=math.nan,
                        mm_iters=0, elapsed_ms=elapsed)
                records.append(rec)
    records.sort(key=lambda r: (r.value, r.scheme, r.trial))
    return records


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def emit_csv(records, path):
    """Write records in the canonical column order; floats at 12 significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([_fmt(getattr(r, col)) for col in CSV_COLUMNS])
