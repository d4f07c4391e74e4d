"""Deterministic fan-out for exact reductions.

Work is cut into an ordered list of tasks; results come back in task order
regardless of which process finished first, so an exact sum over them does
not depend on scheduling.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], tasks: Iterable[T], workers: int = 1) -> list[R]:
    tasks = list(tasks)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    """Cut ``range(total)`` into ``parts`` contiguous, near-equal pieces."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (k < extra)
        out.append((lo, hi))
        lo = hi
    return out


def chunked(seq: Sequence[T], parts: int) -> list[Sequence[T]]:
    return [seq[lo:hi] for lo, hi in split_range(len(seq), parts)]
