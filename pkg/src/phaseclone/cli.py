"""Command-line interface.

Subcommands:
    ideal-sweep   gate-level fidelity sweep to CSV
    pulse-sweep   pulse-pipeline sweep to CSV (with optional angle error)
    tradeoff      annotate a sweep CSV with circle residuals and frontier
                  flags; renders report figures next to the output
    verify        run the self-check suite

Exit codes: 0 success, 1 invalid arguments, 2 verification failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import harness, pulsesim

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_angle(text: str) -> float:
    """Parse an angle: a float, or a pi expression like pi, pi/2, 3pi/2, 0.5pi."""
    token = text.strip().lower().replace(" ", "")
    if not token:
        raise ValueError("empty angle")
    if "pi" in token:
        left, _, right = token.partition("pi")
        if left in ("", "+"):
            coefficient = 1.0
        elif left == "-":
            coefficient = -1.0
        else:
            coefficient = float(left.rstrip("*"))
        denominator = 1.0
        if right:
            if not right.startswith("/"):
                raise ValueError(f"cannot parse angle {text!r}")
            denominator = float(right[1:])
        return coefficient * np.pi / denominator
    return float(token)


def _parse_angle_list(text: str) -> tuple[float, ...]:
    values = tuple(parse_angle(part) for part in text.split(",") if part.strip())
    if not values:
        raise ValueError("expected at least one angle")
    return values


def _parse_alphas(text: str) -> tuple[float, ...]:
    token = text.strip()
    try:
        count = int(token)
    except ValueError:
        return _parse_angle_list(text)
    return harness.default_alpha_grid(count)


def _add_grid_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--alphas",
        type=_parse_alphas,
        default=harness.default_alpha_grid(),
        help="integer point count for a uniform [0, pi] grid, or a comma list "
        "of angles (floats or pi expressions); default 17",
    )
    sub.add_argument(
        "--phis",
        type=_parse_angle_list,
        default=harness.DEFAULT_PHI_SET,
        help="comma list of input phases; default 0,pi/2,pi,3pi/2",
    )
    sub.add_argument("--out", type=Path, default=None, help="output CSV path (default: stdout)")


def _emit(records, out: Path | None) -> None:
    if out is None:
        harness.emit_csv(records, sys.stdout)
    else:
        harness.emit_csv(records, out)


def _cmd_ideal_sweep(args) -> int:
    config = harness.SweepConfig(alpha_grid=args.alphas, phi_set=args.phis)
    _emit(harness.sweep_ideal(config), args.out)
    return EXIT_OK


def _cmd_pulse_sweep(args) -> int:
    config = harness.SweepConfig(
        alpha_grid=args.alphas,
        phi_set=args.phis,
        epsilon=args.epsilon,
        j_coupling=args.j,
        thermal_ratio=args.ratio,
    )
    _emit(harness.sweep_pulse(config), args.out)
    return EXIT_OK


def _cmd_tradeoff(args) -> int:
    records = harness.read_csv(args.infile)
    report = harness.tradeoff_report(records)
    if args.out is None:
        harness.emit_tradeoff_csv(report, sys.stdout)
    else:
        harness.emit_tradeoff_csv(report, args.out)
    lines = [
        f"records: {len(report.rows)}",
        f"max |circle residual|: {report.max_abs_residual:.3e}",
        f"outside universal frontier: {report.n_outside}",
        f"frontier-touching: {report.n_touching}",
    ]
    if not args.no_figures:
        from . import plots  # deferred: pulls in matplotlib

        base = args.out if args.out is not None else args.infile
        stem = base.with_suffix("")
        recs = [row.record for row in report.rows]
        lines.append("figure: " + plots.fidelity_curves_figure(recs, Path(f"{stem}_fidelity.png")))
        lines.append("figure: " + plots.tradeoff_circle_figure(recs, Path(f"{stem}_tradeoff.png")))
    print("\n".join(lines), file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    del args
    return EXIT_OK if harness.run_verification(sys.stdout) else EXIT_VERIFY


def build_parser() -> _Parser:
    parser = _Parser(prog="phaseclone", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    ideal = commands.add_parser("ideal-sweep", help="gate-level fidelity sweep")
    _add_grid_options(ideal)
    ideal.set_defaults(handler=_cmd_ideal_sweep)

    pulse = commands.add_parser("pulse-sweep", help="pulse-pipeline fidelity sweep")
    _add_grid_options(pulse)
    pulse.add_argument("--epsilon", type=float, default=0.0,
                       help="fractional pulse-angle miscalibration in (-1, 1); default 0")
    pulse.add_argument("--j", type=float, default=pulsesim.DEFAULT_J_COUPLING,
                       help=f"scalar coupling in Hz; default {pulsesim.DEFAULT_J_COUPLING}")
    pulse.add_argument("--ratio", type=float, default=pulsesim.CALIBRATED_THERMAL_RATIO,
                       help="thermal polarization of qubit b relative to a; "
                       f"default {pulsesim.CALIBRATED_THERMAL_RATIO} (calibrated)")
    pulse.set_defaults(handler=_cmd_pulse_sweep)

    tradeoff = commands.add_parser("tradeoff", help="annotate a sweep CSV with trade-off columns")
    tradeoff.add_argument("--in", dest="infile", type=Path, required=True, help="input sweep CSV")
    tradeoff.add_argument("--out", type=Path, default=None,
                          help="annotated CSV path (default: stdout)")
    tradeoff.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    tradeoff.set_defaults(handler=_cmd_tradeoff)

    verify = commands.add_parser("verify", help="run the self-check suite")
    verify.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"phaseclone: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"phaseclone: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
