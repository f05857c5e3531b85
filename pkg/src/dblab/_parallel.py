"""Deterministic parallel helpers.

Grid evaluation is embarrassingly parallel over sample points.  Chunk
boundaries are fixed (independent of thread count) and results are
reassembled in submission order, so output is bit-identical whatever
``DBLAB_THREADS`` says.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK = 4096


def thread_count() -> int:
    try:
        n = int(os.environ.get("DBLAB_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def ordered_chunk_map(fn, z: np.ndarray) -> np.ndarray:
    """Apply ``fn`` to fixed-size chunks of ``z``, concatenating in order."""
    z = np.asarray(z)
    if z.size <= CHUNK or thread_count() == 1:
        return np.asarray(fn(z))
    chunks = [z[i:i + CHUNK] for i in range(0, z.size, CHUNK)]
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        parts = list(pool.map(fn, chunks))
    return np.concatenate([np.asarray(p) for p in parts])
