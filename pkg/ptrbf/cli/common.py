from __future__ import annotations

import argparse
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel

from ptrbf.core.config import get_settings
from ptrbf.infrastructure.storage import read_config

M = TypeVar("M", bound=BaseModel)


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="JSON config file")
    parser.add_argument("--seed", type=int, default=None, help="root seed (u64)")
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--threads", type=int, default=None, help="worker threads")


def load_config(args: argparse.Namespace, model: type[M]) -> M:
    """File values over model defaults, then CLI flags over file values."""
    config = read_config(args.config, model) if args.config is not None else model()
    updates = {}
    fields = model.model_fields
    if "seed" in fields:
        if args.seed is not None:
            updates["seed"] = args.seed
        elif args.config is None:
            updates["seed"] = get_settings().seed
    if args.threads is not None and "threads" in fields:
        updates["threads"] = args.threads
    if updates:
        config = model.model_validate({**config.model_dump(), **updates})
    return config


def output_dir(args: argparse.Namespace, config: BaseModel, command: str) -> Path:
    if args.out is not None:
        return args.out
    configured = getattr(config, "output_dir", None)
    if configured:
        return Path(configured)
    return Path(get_settings().output_dir) / command


def fmt(value: float | None, digits: int = 3) -> str:
    return "-" if value is None else f"{value:.{digits}f}"
