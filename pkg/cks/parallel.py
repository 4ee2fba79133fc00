"""
Deterministic worker pool

Work is cut into blocks whose boundaries never depend on the worker count and
results come back in block order, so callers that combine them in that order
get identical output for any --threads value.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Tuple, TypeVar

import psutil

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    return psutil.cpu_count(logical=True) or 1


def make_blocks(count: int, block_size: int) -> List[Tuple[int, int]]:
    """[start, stop) ranges covering 0..count-1"""
    return [(start, min(start + block_size, count)) for start in range(0, count, block_size)]


def run_blocks(fn: Callable[[T], R], blocks: Iterable[T], threads: Optional[int] = 1) -> List[R]:
    """Apply fn to every block, serially or in worker processes; order is preserved"""
    blocks = list(blocks)
    if threads is None:
        threads = default_threads()
    if threads <= 1 or len(blocks) <= 1:
        return [fn(block) for block in blocks]

    workers = min(threads, len(blocks))
    logger.debug(f"Running {len(blocks)} blocks on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))
