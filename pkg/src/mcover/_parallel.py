"""Ordered fan-out over worker processes.

Results always come back in task order, so callers can merge them
deterministically whatever the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], tasks: Sequence[T], workers: int = 1) -> list[R]:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, tasks))


def chunk_ranges(n: int, pieces: int) -> list[tuple[int, int]]:
    """Split ``range(n)`` into at most ``pieces`` contiguous half-open ranges."""
    pieces = max(1, min(pieces, n))
    step, extra = divmod(n, pieces)
    out = []
    lo = 0
    for k in range(pieces):
        hi = lo + step + (1 if k < extra else 0)
        if hi > lo:
            out.append((lo, hi))
        lo = hi
    return out
