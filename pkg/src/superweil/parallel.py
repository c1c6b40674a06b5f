"""Thread-pool helper honoring the SUPERWEIL_THREADS cap.

All parallelized work in this package is pure and collected in input
order, so results are identical for any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from .errors import ValidationError


def thread_count() -> int:
    raw = os.environ.get("SUPERWEIL_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ValidationError(
            f"SUPERWEIL_THREADS must be a positive integer, got {raw!r}"
        )
    return n


def pmap(fn, items):
    """map() preserving order, threaded when SUPERWEIL_THREADS > 1."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
