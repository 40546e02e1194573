"""Throughput-optimal transmission policies for IRS-assisted wireless
powered sensor networks: channel synthesis, phase-shift optimization,
time/power allocation, benchmark schemes and a sweep harness."""

from .allocation import (DegenerateGainsError, GeneralAllocDiag, TimeAllocation,
                         general_time_alloc, power_general, power_special,
                         t01_star, t02_star_special, tau_special)
from .channel import (ChannelSet, dump_channels, los_steering, path_loss,
                      sensor_positions, synth_channels)
from .config import SystemConfig, dbm_to_watts, load_config
from .phase import (MMTrace, PhaseVector, alignment_ratio, quantize_phases,
                    uplink_gain, wet_objective, wet_phase_mm, wit_phases)
from .policy import (FeasibilityReport, LinkGains, PolicySolution,
                     audit_feasibility, benchmark_no_irs, benchmark_random_phase,
                     benchmark_upper_bound, solve_general, solve_special,
                     sum_throughput)
from .sweep import ResultRecord, SweepSpec, emit_csv, run_scheme, run_sweep

__version__ = "0.1.0"
