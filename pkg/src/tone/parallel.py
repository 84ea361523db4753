"""Ordered parallel map capped by the TONE_THREADS environment variable."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable

from tone.errors import DomainError


def worker_count() -> int:
    raw = os.environ.get("TONE_THREADS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        count = int(raw)
    except ValueError:
        raise DomainError(f"TONE_THREADS must be a positive integer, got {raw!r}") from None
    if count < 1:
        raise DomainError(f"TONE_THREADS must be a positive integer, got {raw!r}")
    return count


def ordered_map(fn: Callable, items: Iterable) -> list:
    """map(fn, items) with results in input order, whatever the completion order."""
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
