"""Command-line interface: solve one instance, run sweeps, validate."""

import argparse
import json
import logging
import sys

import numpy as np

from . import kernels
from .channel import dump_channels, synth_channels
from .config import load_config
from .policy import audit_feasibility
from .sweep import SweepSpec, emit_csv, run_scheme, run_sweep


def _add_config_args(p):
    p.add_argument("--config", help="JSON config file (defaults apply when omitted)")
    p.add_argument("--seed", type=int, default=0, help="base RNG seed")


def _parse_list(text, cast):
    try:
        return tuple(cast(v) for v in text.split(",") if v != "")
    except ValueError as exc:
        raise SystemExit(f"error: bad list {text!r}: {exc}")


def _cmd_solve(args):
    cfg = load_config(args.config)
    channels = synth_channels(cfg, args.seed)
    if args.dump_channels:
        dump_channels(channels, args.dump_channels)
    sol = run_scheme(args.scheme, channels, cfg, args.seed)
    rep = audit_feasibility(sol, channels, cfg)

    print(f"scheme          {sol.scheme}")
    print(f"backend         {kernels.BACKEND}")
    print(f"seed            {args.seed}")
    print(f"throughput      {sol.throughput_nats:.9g} nats  ({sol.throughput_bits:.9g} bits)")
    print(f"t01             {sol.alloc.t01:.9g}")
    print(f"t02             {sol.alloc.t02:.9g}")
    print(f"sum tau         {sol.alloc.tau_sum:.9g}")
    print(f"mm iterations   {sol.mm_iters}")
    print(f"feasible        {'yes' if rep.ok else 'NO'}")
    print("sensor  tau            power_w        rate_nats")
    for k in range(len(sol.alloc.tau)):
        print(f"{k:<7d} {sol.alloc.tau[k]:<14.6g} {sol.powers[k]:<14.6g} "
              f"{sol.rates_nats[k]:.6g}")
    if args.out:
        payload = {
            "scheme": sol.scheme, "seed": args.seed,
            "throughput_nats": sol.throughput_nats,
            "throughput_bits": sol.throughput_bits,
            "t01": sol.alloc.t01, "t02": sol.alloc.t02,
            "tau": sol.alloc.tau.tolist(), "powers": sol.powers.tolist(),
            "rates_nats": sol.rates_nats.tolist(), "mm_iters": sol.mm_iters,
            "feasible": rep.ok,
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0 if rep.ok else 1


def _cmd_sweep(args):
    cfg = load_config(args.config)
    spec = SweepSpec(param=args.param, values=_parse_list(args.values, float),
                     schemes=_parse_list(args.schemes, str), trials=args.trials,
                     base_seed=args.seed)
    records = run_sweep(spec, cfg)
    emit_csv(records, args.out)
    n_bad = sum(1 for r in records if np.isnan(r.throughput_nats))
    print(f"wrote {len(records)} records to {args.out}"
          + (f" ({n_bad} failed)" if n_bad else ""))
    return 1 if n_bad else 0


def _cmd_validate(args):
    from .selfcheck import run_all
    failures = 0
    for name, ok, detail in run_all():
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failures += 0 if ok else 1
    print(f"kernel backend: {kernels.BACKEND}")
    return 1 if failures else 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="irswpsn",
        description="Optimal IRS-assisted wireless-powered-network policies")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one channel realization")
    _add_config_args(p_solve)
    p_solve.add_argument("--scheme", default="lc",
                         help="lc | lc-b<N> | random-phase | no-irs | upper-bound")
    p_solve.add_argument("--out", help="write the solution as JSON")
    p_solve.add_argument("--dump-channels", help="write the realization as CSV")
    p_solve.set_defaults(func=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="sweep a config parameter")
    _add_config_args(p_sweep)
    p_sweep.add_argument("--param", required=True, help="config field to sweep")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--schemes", default="lc,random-phase,no-irs,upper-bound")
    p_sweep.add_argument("--trials", type=int, default=1)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", help="run the built-in oracle checks")
    p_val.set_defaults(func=_cmd_validate)

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
