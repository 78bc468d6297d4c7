from __future__ import annotations

import argparse

from ptrbf.cli.common import add_common_arguments, load_config, output_dir
from ptrbf.schemas.config import DatasetConfig
from ptrbf.services.experiment import run_gen_data

NAME = "gen-data"
HELP = "generate a QAM/Rayleigh dataset and export it as CSV"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_common_arguments(parser)
    parser.add_argument("--count", type=int, default=None, help="number of instances")


def handle(args: argparse.Namespace) -> int:
    config = load_config(args, DatasetConfig)
    if args.count is not None:
        config = DatasetConfig.model_validate({**config.model_dump(), "count": args.count})
    out = output_dir(args, config, NAME)
    path = out / "dataset.csv"
    dataset = run_gen_data(config, path)
    print(f"{len(dataset)} instances ({dataset.n_inputs} inputs, {dataset.n_outputs} outputs) written to {path}")
    return 0
