"""Command-line interface: ``irsrate {rate,sweep,design,selftest}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from irsrate.config import SystemConfig, db_to_linear
from irsrate.design import Bound, DesignBudget, solve_design
from irsrate.phase import sample_phase_noise
from irsrate.rate import Method, evaluate, rate_conditional
from irsrate.selftest import run_selftest
from irsrate.sweep import (
    PRESETS,
    VARIABLES,
    SweepRow,
    SweepSpec,
    preset_spec,
    rows_to_csv,
    rows_to_json,
    run_sweep,
)

def _bits(text: str):
    return None if text.lower() in ("inf", "ideal", "none") else int(text)


def _value(text: str):
    t = text.strip()
    if t.lower() in ("inf", "ideal", "none"):
        return None
    f = float(t)
    return int(f) if f.is_integer() and "." not in t and "e" not in t.lower() else f


def _parse_values(text: str) -> list:
    return [_value(v) for v in text.split(",") if v.strip()]


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file with SystemConfig keys")
    p.add_argument("--seed", type=int, default=0, help="master seed (angles and phase noise)")
    p.add_argument("--trials", type=int, default=10_000, help="Monte Carlo trials")
    p.add_argument("--out", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument("--output", type=Path, help="write to this file instead of stdout")
    p.add_argument("--workers", type=int, default=1, help="concurrent workers")
    # absent overrides leave the config-file value in place
    keep = argparse.SUPPRESS
    p.add_argument("--N", type=int, default=keep, help="IRS elements (perfect square)")
    p.add_argument("--M", type=int, default=keep, help="BS antennas (perfect square)")
    p.add_argument("--B", type=_bits, default=keep, help="IRS phase bits, or 'inf' for an ideal IRS")
    p.add_argument("--adc-bits", type=_bits, dest="adc_bits", default=keep, help="ADC bits, or 'inf' for an ideal ADC")
    p.add_argument("--E-u", type=float, dest="E_u", default=keep, help="fixed energy for the P = E_u/(M N^2) law")
    power = p.add_mutually_exclusive_group()
    power.add_argument("--P-db", type=float, dest="P_db", help="transmit SNR in dB")
    power.add_argument("--P-linear", type=float, dest="P_linear", help="transmit SNR, linear")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irsrate", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rate", help="all rate methods at a single point")
    _common(p)

    p = sub.add_parser("sweep", help="sweep one parameter")
    _common(p)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--var", choices=VARIABLES, help="variable for a generic sweep")
    p.add_argument("--values", type=_parse_values, help="comma-separated values ('inf' = ideal)")
    p.add_argument(
        "--methods",
        default="closed_form,monte_carlo",
        help="comma-separated subset of: " + ",".join(m.value for m in Method),
    )

    p = sub.add_parser("design", help="size IRS phase bits and ADC bits for a rate-loss budget")
    _common(p)
    p.add_argument("--delta", type=float, required=True, help="allowed rate degradation, bits/s/Hz")

    sub.add_parser("selftest", help="run the oracle-equivalence checks")
    return parser


def load_config(args) -> SystemConfig:
    data = json.loads(args.config.read_text()) if args.config else {}
    for key in ("N", "M", "B", "adc_bits", "E_u"):
        if key in vars(args):
            data[key] = getattr(args, key)
    if args.P_db is not None:
        data.pop("P", None)
        data["P_db"] = args.P_db
    elif args.P_linear is not None:
        data.pop("P_db", None)
        data["P"] = args.P_linear
    return SystemConfig.from_dict(data, seed=args.seed)


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def cmd_rate(args) -> int:
    cfg = load_config(args)
    methods = [m for m in Method if m is not Method.POWER_SCALING_LIMIT or cfg.E_u is not None]
    rows = []
    for m in methods:
        if m is Method.EXACT_CONDITIONAL:
            res = rate_conditional(cfg, sample_phase_noise(cfg.B, cfg.N, args.seed))
        else:
            res = evaluate(cfg, m, args.trials, args.seed, args.workers)
        rows.append(SweepRow("N", cfg.N, m, res.rate_bits, res.std_error, res.trials, args.seed))
    _emit(rows_to_json(rows, cfg) if args.out == "json" else rows_to_csv(rows), args.output)
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(args)
    if args.preset:
        spec = preset_spec(args.preset, cfg, args.trials, args.seed)
    elif args.var and args.values:
        spec = SweepSpec(
            variable=args.var,
            values=args.values,
            base_config=cfg,
            methods=[m.strip() for m in args.methods.split(",") if m.strip()],
            trials=args.trials,
            seed=args.seed,
        )
    else:
        raise SystemExit("sweep needs --preset or both --var and --values")
    rows = run_sweep(spec, workers=args.workers)
    _emit(rows_to_json(rows) if args.out == "json" else rows_to_csv(rows), args.output)
    return 0


def _pretty(v) -> str:
    if isinstance(v, Bound):
        return v.value.upper()
    if isinstance(v, float):
        return format(v, ".9g")
    return str(v)


def cmd_design(args) -> int:
    cfg = load_config(args)
    outcome = solve_design(DesignBudget(args.delta, cfg))
    if args.out == "json":
        doc = {"delta": args.delta, "config": cfg.to_dict(), "outcome": outcome.to_dict()}
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.output)
        return 0
    lines = [
        f"rate degradation delta : {args.delta:g} bits/s/Hz",
        f"min IRS phase bits B   : {_pretty(outcome.min_irs_bits)}",
        f"  real-valued bound    : {_pretty(outcome.irs_bound) if outcome.irs_bound is not None else 'n/a'}",
        f"  verification slack   : {_pretty(outcome.irs_slack) if outcome.irs_slack is not None else 'n/a'}",
        f"max ADC distortion rho : {_pretty(outcome.max_rho)}",
        f"min ADC bits b         : {_pretty(outcome.min_adc_bits)}",
        f"  verification slack   : {_pretty(outcome.adc_slack) if outcome.adc_slack is not None else 'n/a'}",
        f"a_hat                  : {_pretty(outcome.a_hat)}",
        f"s_hat                  : {_pretty(outcome.s_hat)}",
    ]
    lines += [f"note: {n}" for n in outcome.notes]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "selftest":
        return 0 if run_selftest() else 1
    handler = {"rate": cmd_rate, "sweep": cmd_sweep, "design": cmd_design}[args.command]
    try:
        return handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
