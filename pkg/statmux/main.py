"""
Statmux command line: simulate, replay, fit and report.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from statmux.config.logging_config import setup_logging as configure_logging
from statmux.config.settings import TABLE_FILE
from statmux.errors import ConfigError, FitError
from statmux.executor.statmux_executor import StatmuxExecutor

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INPUT = 2
EXIT_INTERRUPTED = 130


def setup_logging(verbose: bool = False, log_file: Optional[str] = None) -> None:
    """Configure logging level based on verbosity."""
    log_level = "DEBUG" if verbose else "INFO"
    configure_logging(log_level=log_level, log_file=log_file)


def _allocator_list(value: str) -> List[str]:
    names = [name.strip() for name in value.split(",") if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list of allocator names")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    common.add_argument("--log-file", type=str, default=None, help="Also log to this file")

    run_options = argparse.ArgumentParser(add_help=False)
    run_options.add_argument("--seed", type=int, default=None, help="Run this seed only")
    run_options.add_argument(
        "--allocators", type=_allocator_list, default=None, help="Comma-separated allocators, e.g. lam,lfam"
    )
    run_options.add_argument("--jobs", "-j", type=int, default=1, help="Worker threads for sweeps")
    run_options.add_argument("--plot", action="store_true", help="Render plot data to PNG")

    parser = argparse.ArgumentParser(
        prog="statmux", description="Statistical multiplexing rate allocation simulator"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser(
        "simulate", parents=[common, run_options], help="Run the scenarios of a config file"
    )
    simulate.add_argument("--config", "-c", required=True, help="Scenario file (YAML)")
    simulate.add_argument("--out", "-o", required=True, help="Output directory")

    replay = commands.add_parser(
        "replay", parents=[common, run_options], help="Replay a recorded trace"
    )
    replay.add_argument("--trace", "-t", required=True, help="Trace CSV")
    replay.add_argument("--config", "-c", required=True, help="Scenario file (YAML)")
    replay.add_argument("--out", "-o", required=True, help="Output directory")

    fit = commands.add_parser("fit", parents=[common], help="Fit the hyperbolic R-D law to a trace")
    fit.add_argument("--trace", "-t", required=True, help="Trace CSV with rate,mse samples")
    fit.add_argument("--out", "-o", required=True, help="Output directory")
    fit.add_argument("--plot", action="store_true", help="Render plot data to PNG")

    report = commands.add_parser("report", parents=[common], help="Aggregate run directories")
    report.add_argument("run_dirs", nargs="+", help="Run directories (or sweep outputs)")
    report.add_argument("--out", "-o", required=True, help="Output table file")

    return parser


def _print_table(title: str, text: str) -> None:
    print("\n" + "=" * 60)
    print(title)
    print("=" * 60)
    print(text, end="")
    print("=" * 60)


def run(args: argparse.Namespace) -> int:
    if args.command in ("simulate", "replay") and args.jobs < 1:
        logger.error("--jobs must be at least 1")
        return EXIT_INPUT

    executor = StatmuxExecutor(jobs=getattr(args, "jobs", 1), plot=getattr(args, "plot", False))

    if args.command == "simulate":
        table = executor.simulate(args.config, args.out, seed=args.seed, allocators=args.allocators)
        if table is not None:
            _print_run_table(args.out)
    elif args.command == "replay":
        table = executor.replay(
            args.trace, args.config, args.out, seed=args.seed, allocators=args.allocators
        )
        if table is not None:
            _print_run_table(args.out)
    elif args.command == "fit":
        fits = executor.fit(args.trace, args.out)
        lines = [f"{'stream':<8}{'sigma_fit':>16}{'r_squared':>12}{'samples':>9}"]
        for item in fits:
            lines.append(
                f"{item.stream:<8}{item.fit.sigma_fit:>16.6g}{item.fit.r_squared:>12.6f}{item.samples:>9}"
            )
        _print_table("HYPERBOLIC R-D FIT", "\n".join(lines) + "\n")
    elif args.command == "report":
        executor.report(args.run_dirs, args.out)
        with open(args.out, encoding="utf-8") as f:
            _print_table("VARIANCE COMPARISON", f.read())
    return EXIT_OK


def _print_run_table(out_dir: str) -> None:
    table = Path(out_dir) / TABLE_FILE
    if table.exists():
        _print_table("VARIANCE COMPARISON", table.read_text(encoding="utf-8"))


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit status."""
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose, args.log_file)

    try:
        return run(args)
    except (ConfigError, FitError) as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT
    except KeyboardInterrupt:
        logger.info("Operation cancelled by user")
        return EXIT_INTERRUPTED
    except Exception as e:
        logger.error(f"Error: {e}")
        logger.debug("Traceback", exc_info=True)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
