from __future__ import annotations

import argparse

from ptrbf.cli.common import add_common_arguments, fmt, load_config, output_dir
from ptrbf.schemas.config import ExperimentConfig
from ptrbf.schemas.reports import CellStatus
from ptrbf.services.experiment import run_train

NAME = "train"
HELP = "train one network (first architecture and scheme of the config) and write its learning curve"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_common_arguments(parser)
    parser.add_argument("--run", type=int, default=0, help="run index (selects the paired data seed)")


def handle(args: argparse.Namespace) -> int:
    config = load_config(args, ExperimentConfig)
    out = output_dir(args, config, NAME)
    outcome = run_train(config, out, run=args.run)
    cell = outcome.cell
    if cell.status != CellStatus.completed:
        print(f"{cell.scheme} {cell.architecture}: {cell.status.value} ({cell.reason})")
        return 0 if cell.status == CellStatus.skipped else 1
    print(f"scheme={cell.scheme} architecture={cell.architecture} epochs={config.epochs}")
    print(f"final train_mse_db={fmt(cell.final_train_mse_db)} val_mse_db={fmt(cell.final_val_mse_db)}")
    print(f"written to {out}")
    return 0
