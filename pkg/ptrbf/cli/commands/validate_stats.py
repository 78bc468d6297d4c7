from __future__ import annotations

import argparse

from ptrbf.cli.common import add_common_arguments, load_config, output_dir
from ptrbf.schemas.config import StatsConfig
from ptrbf.services.experiment import moment_rows, run_validate_stats

NAME = "validate-stats"
HELP = "Monte-Carlo check of the closed-form kernel-input and output moments"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_common_arguments(parser)
    parser.add_argument("--trials", type=int, default=None, help="Monte-Carlo inputs")


def handle(args: argparse.Namespace) -> int:
    config = load_config(args, StatsConfig)
    if args.trials is not None:
        config = StatsConfig.model_validate({**config.model_dump(), "trials": args.trials})
    out = output_dir(args, config, NAME)
    estimate = run_validate_stats(config, out, threads=args.threads)
    print(f"{'quantity':<10}{'closed':>22}{'monte_carlo':>22}{'deviation':>11}{'tol':>7}  ok")
    for row in moment_rows(estimate):
        closed = complex(row.closed_form_re, row.closed_form_im)
        mc = complex(row.monte_carlo_re, row.monte_carlo_im)
        print(
            f"{row.quantity:<10}{closed:>22.5f}{mc:>22.5f}{row.deviation:>11.4f}{row.tolerance:>7.2f}"
            f"  {'yes' if row.passed else 'NO'}"
        )
    for check in estimate.checks:
        print(
            f"convention {check.quantity}: total ratio={check.ratio_total:.4f} "
            f"component ratio={check.ratio_component:.4f} matched={check.matched}"
        )
    print(f"written to {out}")
    return 0 if estimate.passed else 1
