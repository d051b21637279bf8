"""Command-line entry point: ``stark``, ``scan`` and ``limit`` subcommands."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import ConfigError, ConvergenceError
from .pendular import DEFAULT_JMAX, solve_qubit
from .scan import (
    OBSERVABLES,
    RHO_IN_CHOICES,
    InitialStateSpec,
    ScanConfig,
    long_time_values,
    parse_axis,
    run_scan,
    write_csv,
)

EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3


def _add_model_args(p: argparse.ArgumentParser, need_t: bool) -> None:
    p.add_argument("--n", type=int, required=True, choices=(2, 3))
    p.add_argument("--observable", required=True, choices=OBSERVABLES)
    p.add_argument("--initial", required=True, help="ghz, w, sep001, or amplitudes 'a,b'")
    p.add_argument("--gamma", required=True, help="value or lo:hi:count")
    p.add_argument("--w", required=True, help="value or lo:hi:count")
    p.add_argument("--omega", required=True, help="value or lo:hi:count")
    p.add_argument("--alpha", type=float, default=np.pi / 2, help="radians (default pi/2)")
    p.add_argument("--t", required=need_t, help="lo:hi:count time grid in hbar/B")
    p.add_argument("--rho-in", default="initial", choices=RHO_IN_CHOICES)
    p.add_argument("--jmax", type=int, default=DEFAULT_JMAX)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pendular-sim",
        description="Pendular-state qubit arrays under intrinsic decoherence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    stark = sub.add_parser("stark", help="single-molecule qubit energies and orientations")
    stark.add_argument("--w", type=float, required=True, help="reduced field mu*eps/B")
    stark.add_argument("--jmax", type=int, default=DEFAULT_JMAX)

    scan = sub.add_parser("scan", help="sweep one parameter against time and write CSV")
    _add_model_args(scan, need_t=True)
    scan.add_argument("--out", required=True, help="CSV destination")
    scan.add_argument("--workers", type=int, default=1, help="worker processes")

    limit = sub.add_parser("limit", help="infinite-time value at fixed parameters")
    _add_model_args(limit, need_t=False)
    return parser


def config_from_args(args: argparse.Namespace) -> ScanConfig:
    times = parse_axis(args.t, "t", allow_single_count=True) if args.t else (0.0,)
    return ScanConfig(
        n=args.n,
        initial=InitialStateSpec.parse(args.initial),
        gamma=parse_axis(args.gamma, "gamma"),
        w=parse_axis(args.w, "w"),
        omega=parse_axis(args.omega, "omega"),
        times=times,
        observable=args.observable,
        alpha=args.alpha,
        jmax=args.jmax,
        rho_in=args.rho_in,
    )


def _run(args: argparse.Namespace) -> int:
    if args.command == "stark":
        try:
            q = solve_qubit(args.w, args.jmax)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        for name in ("E0", "E1", "C0", "C1", "Ct"):
            print(f"{name} {getattr(q, name):.12g}")
        return 0

    config = config_from_args(args)
    if args.command == "scan":
        records = run_scan(config, workers=args.workers)
        write_csv(records, args.out)
        print(f"wrote {len(records)} records to {args.out}")
    else:
        for label, value in long_time_values(config):
            print(f"{label} {value:.12g}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
