"""Bounded process parallelism with results merged in input order."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable


def default_jobs() -> int:
    raw = os.environ.get("MDRKIT_JOBS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ordered_map(fn: Callable, items: Iterable, jobs: int | None = None) -> list:
    """``[fn(x) for x in items]``, spread over ``jobs`` processes when above 1.

    ``fn`` must be a module-level function. Output order never depends on
    scheduling, so results are deterministic.
    """
    items = list(items)
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as ex:
        return list(ex.map(fn, items))


__all__ = ["default_jobs", "ordered_map"]
