from __future__ import annotations

import argparse

from ptrbf.cli.common import add_common_arguments, fmt, load_config, output_dir
from ptrbf.schemas.config import ExperimentConfig
from ptrbf.services.experiment import run_comparison

NAME = "compare"
HELP = "compare initialization schemes over paired runs"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_common_arguments(parser)


def handle(args: argparse.Namespace) -> int:
    config = load_config(args, ExperimentConfig)
    out = output_dir(args, config, NAME)
    report = run_comparison(config, out, threads=args.threads)
    print(f"{'architecture':<14}{'scheme':<15}{'runs':>5}{'final_db':>10}{'val_db':>10}{'steady_db':>11}{'epochs@thr':>12}")
    for s in report.summaries:
        print(
            f"{s.architecture:<14}{s.scheme:<15}{s.runs:>5}{fmt(s.final_train_mse_db):>10}"
            f"{fmt(s.final_val_mse_db):>10}{fmt(s.steady_state_db):>11}"
            f"{'-' if s.epochs_to_threshold is None else s.epochs_to_threshold:>12}"
        )
    skipped = {(c.architecture, c.scheme, c.reason) for c in report.cells if c.status.value == "skipped"}
    for architecture, scheme, reason in sorted(skipped):
        print(f"skipped {architecture} {scheme}: {reason}")
    print(f"written to {out}")
    return 1 if report.failed else 0
