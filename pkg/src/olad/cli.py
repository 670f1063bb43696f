"""Command-line entry point.

Exit codes: 0 success, 1 invalid scenario, 2 model/runtime error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from olad.config import ConfigError, ScenarioConfig, default_config, load_config
from olad.controller import IllegalTransition, InsufficientCapacity
from olad.sweeps import (
    run_controller_trace,
    run_direct_sweep,
    run_figures,
    run_latency_sweep,
    run_linkflood,
    write_text,
)

log = logging.getLogger("olad")

EXIT_OK, EXIT_CONFIG, EXIT_MODEL, EXIT_IO = 0, 1, 2, 3


def _fractions(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not values or any(not 0.0 <= v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError("trust fractions must be in [0, 1]")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="olad", description="Optical-layer DDoS defense models and simulator."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, out_help: str) -> None:
        p.add_argument("--config", type=Path, help="scenario file (default: built-in paper scenario)")
        p.add_argument("--out", type=Path, help=out_help)
        p.add_argument("--f", dest="fractions", type=_fractions, help="trust fractions, e.g. 0.4,0.8")

    common(sub.add_parser("direct-sweep", help="goodput vs attack strength"), "CSV path (default stdout)")
    common(sub.add_parser("latency-sweep", help="latency vs attack strength"), "CSV path (default stdout)")
    common(sub.add_parser("linkflood", help="link-flood detection timelines"), "CSV path (default stdout)")
    common(sub.add_parser("controller-trace", help="controller event log"), "log path (default stdout)")
    common(sub.add_parser("figures", help="all datasets for the default scenario"), "output directory")
    return parser


def _load(args: argparse.Namespace) -> ScenarioConfig:
    config = load_config(args.config) if args.config else default_config()
    if args.fractions:
        config = replace(config, trust_fractions=args.fractions)
    return config


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_text(out, text)
        log.info("wrote %s", out)


def run(args: argparse.Namespace) -> int:
    config = _load(args)
    out = args.out or config.output
    if args.command == "direct-sweep":
        _emit(run_direct_sweep(config).to_csv(), out)
    elif args.command == "latency-sweep":
        _emit(run_latency_sweep(config).to_csv(), out)
    elif args.command == "linkflood":
        _emit(run_linkflood(config).to_csv(), out)
    elif args.command == "controller-trace":
        _emit(run_controller_trace(config).event_log, out)
    elif args.command == "figures":
        for path in run_figures(config, out or Path("figures")):
            log.info("wrote %s", path)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InsufficientCapacity as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"shortfall: {exc.shortfall:.3f} Gbps", file=sys.stderr)
        return EXIT_MODEL
    except (ValueError, IllegalTransition) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
