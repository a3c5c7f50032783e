"""Counter-addressable uniform variates.

Variate ``n`` of stream ``seed`` depends only on ``(seed, n)``, so any index
range can be generated independently and merged in order with identical
results.
"""

import numpy as np
from numpy.random import Philox

_BLOCK = 4  # Philox4x64 emits four 64-bit words per counter value
_SCALE = 2.0 ** -53


def uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Return variates ``start .. start + count - 1`` in the open interval (0, 1)."""
    if start < 0 or count < 0:
        raise ValueError("start and count must be non-negative")
    if count == 0:
        return np.empty(0)
    block, skip = divmod(start, _BLOCK)
    gen = Philox(key=seed, counter=[block, 0, 0, 0])
    raw = gen.random_raw(skip + count)[skip:]
    # midpoint of each 53-bit cell keeps 0 and 1 out of range
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _SCALE


def uniforms_chunked(seed: int, count: int, chunk: int = 1 << 20):
    """Yield ``(start, block)`` pairs covering variates ``0 .. count - 1``."""
    for start in range(0, count, chunk):
        yield start, uniforms(seed, start, min(chunk, count - start))
