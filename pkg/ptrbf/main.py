from __future__ import annotations

import logging
import sys

from ptrbf.cli.router import build_parser
from ptrbf.core.config import get_settings
from ptrbf.core.errors import PtRbfError
from ptrbf.core.logging import configure_logging

logger = logging.getLogger(__name__)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    configure_logging(args.log_level or settings.log_level)
    try:
        return int(args.handler(args))
    except PtRbfError as exc:
        logger.debug("command failed command=%s", args.command, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return 2
