"""Compare the compiled kernel extension against the pure-Python fallback.

Run from the repo root after an editable install:

    python3 benchmarks/kernel_benchmark.py [--repeats 5]

Times the four scalar kernels on representative workloads and reports the
median per-call latency of each backend plus the speedup.  The eigenpair
helper is numpy-backed in both builds, so it is timed once for reference.
"""

import argparse
import math
import statistics
import time

import numpy as np

from irswpsn.kernels import eigen, pure

try:
    from irswpsn.kernels import _core as core
except ImportError:
    core = None


def _time_call(fn, number, repeats):
    """Median seconds per call over `repeats` timed batches."""
    best = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(number):
            fn()
        best.append((time.perf_counter() - t0) / number)
    return statistics.median(best)


def _workloads():
    rng = np.random.default_rng(42)
    xs = np.concatenate([np.logspace(-3, 6, 40), [-0.3, -0.1, 0.0]])

    def lambert(mod):
        return lambda: [mod.lambert_w0(float(x)) for x in xs]

    def golden(mod):
        f = lambda t: (1.0 - t) * math.log1p((2.0 + 40.0 * t) / (1.0 - t)) if t < 1.0 else 0.0
        return lambda: mod.golden_section_max(f, 0.0, 1.0, tol=1e-9)

    def bisect(mod):
        g = lambda u: u ** 3 - 2.0 * u - 5.0
        return lambda: mod.bisect_root(g, 0.0, 4.0, tol=1e-12)

    a = rng.uniform(0.5, 50.0, size=6)
    b = rng.uniform(0.5, 200.0, size=6)
    d = rng.uniform(0.0, 0.5, size=6)

    def kkt(mod):
        return lambda: mod.kkt_general_alloc(a, b, d, 0.9, tol=1e-10)

    return [
        ("lambert_w0 (43 pts)", lambert, 200),
        ("golden_section_max", golden, 200),
        ("bisect_root", bisect, 500),
        ("kkt_general_alloc K=6", kkt, 100),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5, help="timed batches per kernel")
    args = ap.parse_args()

    if core is None:
        print("compiled extension not importable; timing the fallback only")
    header = f"{'kernel':<24}{'pure [us]':>12}{'compiled [us]':>15}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, make, number in _workloads():
        t_pure = _time_call(make(pure), number, args.repeats)
        if core is not None:
            t_core = _time_call(make(core), number, args.repeats)
            ratio = t_pure / t_core
            print(f"{name:<24}{t_pure * 1e6:>12.1f}{t_core * 1e6:>15.1f}{ratio:>8.1f}x")
        else:
            print(f"{name:<24}{t_pure * 1e6:>12.1f}{'-':>15}{'-':>9}")

    h = np.random.default_rng(7).standard_normal((30, 30)) @ np.eye(30)
    h = h @ h.T
    t_eig = _time_call(lambda: eigen.max_eigenpair(h), 200, args.repeats)
    print(f"\nmax_eigenpair N=30 (numpy in both builds): {t_eig * 1e6:.1f} us")


if __name__ == "__main__":
    main()
