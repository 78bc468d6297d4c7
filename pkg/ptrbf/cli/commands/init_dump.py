from __future__ import annotations

import argparse

from ptrbf.cli.common import add_common_arguments, load_config, output_dir
from ptrbf.schemas.config import DumpConfig
from ptrbf.services.experiment import dump_init, parameter_stats

NAME = "init-dump"
HELP = "initialize one network and write it with parameter histograms"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_common_arguments(parser)


def handle(args: argparse.Namespace) -> int:
    config = load_config(args, DumpConfig)
    out = output_dir(args, config, NAME)
    net = dump_init(config, out)
    print(f"{'layer':>5}  {'class':<10}{'mean':>24}{'variance':>12}")
    for layer, name, mean_re, mean_im, variance in parameter_stats(net):
        print(f"{layer:>5}  {name:<10}{complex(mean_re, mean_im):>24.5f}{variance:>12.5f}")
    print(f"written to {out}")
    return 0
