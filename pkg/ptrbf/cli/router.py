from __future__ import annotations

import argparse

from ptrbf import __version__
from ptrbf.cli.commands import compare, gen_data, init_dump, train, validate_stats

COMMANDS = (train, compare, validate_stats, init_dump, gen_data)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptrbf", description="deep PT-RBF initialization toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="overrides PTRBF_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        sub = subparsers.add_parser(module.NAME, help=module.HELP)
        module.add_arguments(sub)
        sub.set_defaults(handler=module.handle)
    return parser
