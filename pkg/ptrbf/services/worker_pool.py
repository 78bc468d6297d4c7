from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from ptrbf.core.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Bounded pool for independent jobs; results come back in submission order."""

    def __init__(self, max_workers: int):
        self.max_workers = int(max(1, max_workers))

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        items = list(items)
        if self.max_workers == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        logger.debug("pool map jobs=%d workers=%d", len(items), self.max_workers)
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [executor.submit(fn, item) for item in items]
            return [future.result() for future in futures]


def get_pool(threads: int | None = None) -> WorkerPool:
    if threads is None:
        threads = get_settings().threads
    return WorkerPool(max_workers=threads)
