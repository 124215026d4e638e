"""Order-preserving fan-out of audit chunks over worker processes."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor


def map_chunks(fn, ctx, chunks, *args, workers=1):
    """Return [fn(ctx, chunk, *args) for chunk in chunks], possibly in parallel.

    Results come back in chunk order regardless of scheduling, so merged
    reports do not depend on the worker count.
    """
    if workers is None or workers <= 1 or len(chunks) <= 1:
        return [fn(ctx, c, *args) for c in chunks]
    reps = [itertools.repeat(a, len(chunks)) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, itertools.repeat(ctx, len(chunks)), chunks, *reps,
                             chunksize=max(1, len(chunks) // (4 * workers))))
