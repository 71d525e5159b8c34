#!/usr/bin/env python3
"""fedmode command-line entry point: generate, train, evaluate, gradcheck."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from config import LOG_LEVEL, METRICS_PORT, load_config
from core import EXIT_OK, EXIT_RUNTIME_ERROR, FedModeError, exit_code_for
from observability import configure_logging, count_error, start_metrics_server
from services import evaluate_checkpoints, format_rows, generate_trips, run_experiment, run_gradcheck
from store import RunLayout, write_trips_csv

logger = logging.getLogger("fedmode")


def _generate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    out = RunLayout.at(args.out or config.output_dir).ensure()
    path = write_trips_csv(out.trips_csv, generate_trips(config))
    print(path)
    return EXIT_OK


def _train(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.out:
        config = config.with_output_dir(args.out)
    result = run_experiment(config)
    for name, accuracy in result.final_accuracy().items():
        print(f"{name:<18} {accuracy:.4f}")
    print(result.layout.metrics_csv)
    return EXIT_OK


def _evaluate(args: argparse.Namespace) -> int:
    for line in format_rows(evaluate_checkpoints(args.checkpoint_dir, args.data)):
        print(line)
    return EXIT_OK


def _gradcheck(args: argparse.Namespace) -> int:
    results = run_gradcheck()
    for result in results:
        print(result.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_RUNTIME_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fedmode", description="Federated travel-mode detection simulator")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="logging level (default from FEDMODE_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser("generate", help="write synthetic trips to <out>/trips.csv")
    generate.add_argument("--config", help="experiment config JSON (defaults when omitted)")
    generate.add_argument("--out", help="output directory")
    generate.set_defaults(handler=_generate)

    train = sub.add_parser("train", help="run federated training, ensembles and evaluation")
    train.add_argument("--config", help="experiment config JSON (defaults when omitted)")
    train.add_argument("--out", help="output directory (overrides output_dir)")
    train.set_defaults(handler=_train)

    evaluate = sub.add_parser("evaluate", help="score final checkpoints on a trip CSV")
    evaluate.add_argument("--checkpoint-dir", required=True, help="run directory or its checkpoints/final")
    evaluate.add_argument("--data", required=True, help="trip CSV (trip_id,lat,lon,timestamp,mode)")
    evaluate.set_defaults(handler=_evaluate)

    gradcheck = sub.add_parser("gradcheck", help="finite-difference check of every architecture")
    gradcheck.set_defaults(handler=_gradcheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    start_metrics_server(METRICS_PORT)
    try:
        return args.handler(args)
    except FedModeError as exc:
        count_error(exc.context)
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except Exception as exc:
        count_error(f"{args.command}.unexpected")
        logger.exception("Unexpected failure in %s", args.command)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
