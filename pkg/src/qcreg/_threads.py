"""Optional thread fan-out for per-circle / per-radius work.

All computations in this package are pure, so results do not depend on the
worker count. `QCREG_THREADS` caps the pool size; the default of 1 keeps
everything sequential.
"""

import os
from concurrent.futures import ThreadPoolExecutor

_ENV_VAR = "QCREG_THREADS"


def worker_count() -> int:
    raw = os.environ.get(_ENV_VAR, "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def ordered_map(fn, items):
    """Map preserving input order, threaded only when QCREG_THREADS > 1."""
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
