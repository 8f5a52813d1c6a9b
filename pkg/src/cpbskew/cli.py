"""Command line entry point.

Exit codes: 0 success, 1 validation failure, 2 bad arguments or config,
3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .sweep import (
    DEFAULT_T_MAX,
    DEFAULT_T_STEPS,
    ConfigError,
    SweepConfig,
    parse_number,
    load_config,
    reproduce_figures,
    run_sweep,
)
from .validation import run_validation

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _float_list(text):
    try:
        return [parse_number(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpbskew", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value file; its entries override flags")

    trace = sub.add_parser("trace", parents=[common], help="sample S_I(T) for a parameter grid")
    trace.add_argument("--delta", type=_float_list, help="scaled detunings, e.g. 0,0.3")
    trace.add_argument("--gamma", type=_float_list, help="capacitance ratios C_j/C_g, e.g. 1/4,1/8")
    trace.add_argument("--n", type=_int_list, help="initial photon numbers")
    trace.add_argument("--tmax", type=float, default=DEFAULT_T_MAX)
    trace.add_argument("--steps", type=int, default=DEFAULT_T_STEPS)
    trace.add_argument("--out", type=Path, default=Path("traces"))
    trace.add_argument("--plots", action="store_true", help="also write a gnuplot script")

    figures = sub.add_parser("figures", parents=[common], help="regenerate the five figure bundles")
    figures.add_argument("--out", type=Path, default=Path("figures"))

    validate = sub.add_parser("validate", help="oracle agreement and invariant checks")
    validate.add_argument("--draws", type=int, default=1000)
    validate.add_argument("--seed", type=int, default=0)
    return parser


def _trace_config(args) -> SweepConfig:
    values = {
        "delta_values": args.delta,
        "gamma_values": args.gamma,
        "n_values": args.n,
        "t_max": args.tmax,
        "t_steps": args.steps,
        "output_dir": args.out,
        "emit_plots": args.plots,
    }
    if args.config is not None:
        values.update(load_config(args.config))
    missing = [k for k in ("delta_values", "gamma_values", "n_values") if values[k] is None]
    if missing:
        raise ConfigError(f"missing required settings: {', '.join(missing)}")
    return SweepConfig(**values)


def _figures_settings(args) -> dict:
    values = {"output_dir": args.out}
    if args.config is not None:
        values.update(load_config(args.config))
    unused = set(values) - {"output_dir", "t_max", "t_steps"}
    if unused:
        raise ConfigError(f"settings not used by 'figures': {', '.join(sorted(unused))}")
    return values


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "trace":
            for path in run_sweep(_trace_config(args)):
                print(path)
        elif args.command == "figures":
            rep = reproduce_figures(**_figures_settings(args))
            print(rep.report_path.read_text(), end="")
        elif args.command == "validate":
            checks = run_validation(args.draws, args.seed)
            for check in checks:
                print(check.line())
            return EXIT_OK if all(c.passed for c in checks) else EXIT_VALIDATION
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
