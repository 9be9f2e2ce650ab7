"""
RindlerBox command line: sweep, verify and state

Exit codes: 0 success, 1 failed check or numerical failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from cli.ranges import range_arg
from cli.state_view import build_family_state, render_state
from cli.sweep import FAMILIES, FORMATS, MEASURES, SweepConfig, run_sweep, write_result
from core.acceptance import run_checks
from core.errors import DomainError, LayoutError, RindlerBoxError
from utils.crash_logger import CrashLogger
from utils.log_setup import configure_logging, level_for
from utils.settings import Settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _add_numerics(parser: argparse.ArgumentParser):
    parser.add_argument("--epsilon", type=float, help="maximum truncated Fock tail mass")
    parser.add_argument("--grid-theta", type=int, help="theta grid points per round")
    parser.add_argument("--grid-phi", type=int, help="phi grid points per round (1 pins phi at 0)")
    parser.add_argument("--refine", type=int, help="local refinement rounds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rindlerbox",
        description="Entanglement and discord of helicity states seen by accelerated observers",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress (-v) or debug detail (-vv) to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate a measure over an (omega, p, qr2) grid")
    sweep.add_argument("--measure", required=True, choices=MEASURES)
    sweep.add_argument("--family", choices=FAMILIES,
                       help="state family (default: inferred from the measure and --qr2)")
    sweep.add_argument("--omega", required=True, type=range_arg, help="VALUE or START:STOP:STEP")
    sweep.add_argument("--omega-c", type=float, help="Charlie's omega for the tripartite family")
    sweep.add_argument("--p", required=True, type=range_arg, help="mixing probability VALUE or range")
    sweep.add_argument("--qr2", type=range_arg, help="|q_R|^2 VALUE or range (unruh family)")
    sweep.add_argument("--out", type=Path, help="output file (default: stdout)")
    sweep.add_argument("--format", choices=FORMATS, default="csv")
    sweep.add_argument("--workers", type=int, help="worker threads")
    _add_numerics(sweep)

    verify = sub.add_parser("verify", help="run the acceptance checks and print a JSON ledger")
    verify.add_argument("--out", type=Path, help="also write the ledger to this file")
    _add_numerics(verify)

    state = sub.add_parser("state", help="print an effective helicity density matrix")
    state.add_argument("family", choices=FAMILIES)
    state.add_argument("--omega", type=float, default=1.0)
    state.add_argument("--omega-c", type=float, help="Charlie's omega (tripartite, default --omega)")
    state.add_argument("--p", type=float, default=1.0)
    state.add_argument("--qr2", type=float, help="|q_R|^2 (unruh family, default 1)")
    state.add_argument("--epsilon", type=float, help="maximum truncated Fock tail mass")
    state.add_argument("--dense", action="store_true", help="also summarize the dense Fock expansion")
    return parser


def _grid(settings: Settings, args):
    return settings.grid_spec(args.grid_theta, args.grid_phi, args.refine)


def _open_out(path: Optional[Path]):
    """Open --out before any computation so an unwritable path fails fast"""
    if path is None:
        return contextlib.nullcontext()
    return open(path, "w", encoding="utf-8", newline="")


def cmd_sweep(args, settings: Settings) -> int:
    config = SweepConfig(
        measure=args.measure,
        omega_range=args.omega,
        p_range=args.p,
        qr2_range=args.qr2,
        family=args.family,
        omega_c=args.omega_c,
        policy=settings.truncation_policy(args.epsilon),
        grid=_grid(settings, args),
        format=args.format,
        workers=args.workers or int(settings.get("sweep_workers")),
    )
    CrashLogger.set_context(measure=config.measure, family=config.family)

    with _open_out(args.out) as f:
        result = run_sweep(config)
        write_result(result, f or sys.stdout, config.format)
    if result.failed:
        logger.error("%d of %d sweep rows failed", result.failed, len(result.rows))
        return EXIT_FAILURE
    return EXIT_OK


def cmd_verify(args, settings: Settings) -> int:
    with _open_out(args.out) as out:
        results = run_checks(_grid(settings, args), settings.truncation_policy(args.epsilon))
        ledger = json.dumps([r.to_json() for r in results], indent=2)
        print(ledger)
        if out is not None:
            out.write(ledger + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


def cmd_state(args, settings: Settings) -> int:
    if args.qr2 is not None and args.family != "unruh":
        raise DomainError("--qr2 only applies to the unruh family")
    if args.omega_c is not None and args.family != "tripartite":
        raise DomainError("--omega-c only applies to the tripartite family")
    CrashLogger.set_context(family=args.family, omega=args.omega, p=args.p)
    blocked = build_family_state(args.family, args.omega, args.p, args.omega_c, args.qr2,
                                 settings.truncation_policy(args.epsilon))
    print(render_state(blocked, dense=args.dense, dim_cap=int(settings.get("dense_dim_cap"))))
    return EXIT_OK


COMMANDS = {"sweep": cmd_sweep, "verify": cmd_verify, "state": cmd_state}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    settings = Settings()
    configure_logging(level_for(args.verbose, settings.get("log_level", "WARNING")))
    CrashLogger.set_context(command=args.command)
    # unexpected exceptions keep the context for the crash logger
    try:
        code = COMMANDS[args.command](args, settings)
    except (DomainError, LayoutError) as exc:
        print(f"rindlerbox {args.command}: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except OSError as exc:
        print(f"rindlerbox {args.command}: error: cannot write {exc.filename}: {exc.strerror}", file=sys.stderr)
        code = EXIT_USAGE
    except RindlerBoxError as exc:
        print(f"rindlerbox {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        code = EXIT_FAILURE
    CrashLogger.clear_context()
    return code
