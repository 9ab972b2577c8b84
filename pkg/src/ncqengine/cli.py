"""Command-line front end: ``ncq sweep | figure | point | check``.

Exit codes: 0 success, 1 parse/validation failure, 2 self-check failure,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .core import Orientation
from .errors import IoError, ParseError, ValidationError
from .sweep import CYCLES, emit_csv, evaluate_point, format_csv, parse_config, run_sweep

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CHECK_FAILED = 2
EXIT_IO = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncq",
        description="Quantum heat engines on a noncommutative phase space.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate a parameter grid from a config file")
    sweep.add_argument("--config", required=True, type=Path, help="key = value config file")
    sweep.add_argument("--out", type=Path, help="CSV destination (overrides 'output' in the config)")
    sweep.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")

    figure = sub.add_parser("figure", help="regenerate the efficiency figures")
    figure.add_argument("--id", required=True, type=int, choices=(2, 3, 4), dest="fig_id")
    figure.add_argument("--out", required=True, type=Path, help="output directory")
    figure.add_argument("--jobs", type=_positive_int, default=1)
    figure.add_argument("--no-plot", action="store_true", help="write CSV only, skip PNG rendering")

    point = sub.add_parser("point", help="evaluate a single cycle")
    point.add_argument("--cycle", required=True, choices=CYCLES)
    point.add_argument("--orientation", default="positive", choices=[o.value for o in Orientation])
    point.add_argument("--n-phi0", required=True, type=float)
    point.add_argument("--theta-eta", type=float, default=0.0)
    point.add_argument("--gamma", type=float, default=0.0)
    point.add_argument("--alpha", required=True, type=float)
    point.add_argument("--hbar", type=float, default=1.0)
    point.add_argument("--omega", type=float, default=1.0)
    point.add_argument("--mass", type=float, default=1.0)

    sub.add_parser("check", help="run the oracle self-check suite")
    return parser


def _cmd_sweep(args) -> int:
    try:
        text = args.config.read_text()
    except OSError as exc:
        raise IoError(f"cannot read {args.config}: {exc}") from exc
    config = parse_config(text)
    rows = run_sweep(config, jobs=args.jobs)
    out = args.out or (Path(config.output) if config.output else None)
    if out is None:
        sys.stdout.write(format_csv(rows))
    else:
        emit_csv(rows, out)
    return EXIT_OK


def _cmd_figure(args) -> int:
    from .figures import write_figure

    try:
        paths = write_figure(args.fig_id, args.out, jobs=args.jobs, plot=not args.no_plot)
    except OSError as exc:
        raise IoError(str(exc)) from exc
    for path in paths:
        print(path)
    return EXIT_OK


def _cmd_point(args) -> int:
    if not args.mass > 0:
        raise ValidationError(f"mass must be positive, got {args.mass}")
    row = evaluate_point(
        args.cycle, args.orientation, args.n_phi0, args.theta_eta, args.gamma, args.alpha,
        hbar=args.hbar, omega=args.omega,
    )
    sys.stdout.write(format_csv([row]))
    return EXIT_OK


def _cmd_check(args) -> int:
    from .selfcheck import self_check

    return EXIT_OK if self_check() else EXIT_CHECK_FAILED


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handlers = {"sweep": _cmd_sweep, "figure": _cmd_figure, "point": _cmd_point, "check": _cmd_check}
    try:
        return handlers[args.command](args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
