"""Thread-count plumbing. One environment variable controls everything."""

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "PRIMEFRAC_THREADS"


def n_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def ordered_map(fn, items):
    """Map ``fn`` over ``items`` on a thread pool; results keep input order."""
    items = list(items)
    workers = min(n_threads(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
