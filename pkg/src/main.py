#!/usr/bin/env python3
"""
Curved-Space N-Body Toolkit - Main Entry Point.

Command-line interface for simulating the N-body problem on spaces of
constant curvature, running κ→0 continuation sweeps, verifying the
implementation against its invariants and inspecting metric tables.

Exit codes: 0 success, 1 validation error, 2 acceptance-threshold
violation, 3 runtime singularity.
"""

import argparse
import sys
from typing import List, Optional

from .commands import cmd_derive, cmd_simulate, cmd_sweep, cmd_verify
from .config import LogFormat, load_config
from .errors import EXIT_VALIDATION, CurvedNBodyError, error_context, exit_code_for
from .logging import get_logger, run_context, setup_logging

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curved-nbody",
        description="N-body problem on spheres and hyperbolic spheres of constant curvature",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s simulate --scenario scenarios/two_body_sphere.json --out runs/sphere
  %(prog)s sweep --scenario scenarios/sweep_two_body.json --out runs/sweep
  %(prog)s verify --out runs/verify --seed 7
  %(prog)s derive --dim 3 --kappa -1 --point 0.5,1.0,0.3
        """,
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Set logging level (default from configuration)",
    )
    parser.add_argument(
        "--log-format",
        choices=[f.value for f in LogFormat],
        default=None,
        help="Console log format (default from configuration)",
    )
    parser.add_argument("--config", type=str, help="JSON configuration file")

    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="Integrate a scenario and write its trajectory")
    simulate.add_argument("--scenario", required=True, help="Scenario JSON file")
    simulate.add_argument("--out", help="Output directory (default: <output.directory>/<scenario name>)")
    simulate.add_argument("--checked", action="store_true", help="Enable oracle assertions")

    sweep = sub.add_parser("sweep", help="Run the kappa-continuation experiments of a scenario")
    sweep.add_argument("--scenario", required=True, help="Scenario JSON file with an experiment block")
    sweep.add_argument("--out", help="Output directory (default: <output.directory>/<scenario name>)")

    verify = sub.add_parser("verify", help="Run the invariant verification suite")
    verify.add_argument("--out", help="Directory for verify_report.json")
    verify.add_argument("--seed", type=int, help="Seed of the random sampling")
    verify.add_argument("--checked", action="store_true", help="Enable oracle assertions")

    derive = sub.add_parser("derive", help="Print metric and Christoffel tables at a chart point")
    derive.add_argument("--dim", type=int, choices=[2, 3], required=True)
    derive.add_argument("--kappa", type=float, required=True)
    derive.add_argument("--point", required=True, help="s,phi[,theta]")

    return parser


def dispatch(args: argparse.Namespace, config) -> int:
    if args.command == "simulate":
        return cmd_simulate(args.scenario, args.out, config, args.checked)
    if args.command == "sweep":
        return cmd_sweep(args.scenario, args.out, config)
    if args.command == "verify":
        return cmd_verify(config, args.out, args.seed, args.checked)
    return cmd_derive(args.dim, args.kappa, args.point, config)


def main(argv: Optional[List[str]] = None) -> int:
    """Main function."""
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except CurvedNBodyError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_VALIDATION

    setup_logging(
        args.log_level or config.logging.level.value,
        log_file=config.logging.file,
        json_format=(args.log_format or config.logging.format.value) == LogFormat.JSON.value,
    )

    with run_context(component="cli", command=args.command) as run:
        logger.log_operation_start(args.command)
        try:
            with error_context("cli", args.command):
                code = dispatch(args, config)
        except CurvedNBodyError as e:
            code = exit_code_for(e)
            logger.log_operation_failure(
                args.command, e.error_code, duration_ms=run.elapsed_ms(), exit_code=code
            )
            print(f"error [{e.error_code}]: {e.message}", file=sys.stderr)
            for line in getattr(e, "validation_errors", None) or getattr(e, "violations", None) or []:
                print(f"  - {line}", file=sys.stderr)
            return code

        logger.log_operation_success(args.command, duration_ms=run.elapsed_ms(), exit_code=code)
        return code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\nInterrupted by user", file=sys.stderr)
        sys.exit(130)
