"""Deterministic random streams: SplitMix64 in counter form.

Every random quantity in this package derives from one documented mapping:

    value(seed, i)     = mix64((seed + (i + 1) * GOLDEN) mod 2**64)
    substream(seed, j) = value(seed, j)        # child seed = j-th output

where mix64 is the SplitMix64 finalizer (xor-shift 30, multiply, xor-shift
27, multiply, xor-shift 31). A (seed, substream, index) triple therefore
names one fixed 64-bit value, independent of batching, chunk sizes, or
worker counts, and is reproducible in any language with 64-bit integers.

Bounded draws map a raw value r onto 0..bound-1 as floor(r * bound / 2**64)
(multiply-high). The map is exact in 128-bit arithmetic and its bias is
below bound / 2**64, irrelevant at the bounds used here.
"""

from __future__ import annotations

import operator

import numpy as np

from .errors import DomainError

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB

#: Ceiling for the vectorized bounded draw; the scalar path has no limit.
VECTOR_BOUND_LIMIT = 1 << 32


def mix64(z: int) -> int:
    """SplitMix64 finalizer of a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MULT1) & MASK64
    z = ((z ^ (z >> 27)) * _MULT2) & MASK64
    return z ^ (z >> 31)


def stream_value(seed: int, index: int) -> int:
    """index-th raw output (0-based) of the stream seeded with `seed`."""
    return mix64(seed + (index + 1) * GOLDEN)


def substream_seed(seed: int, j: int) -> int:
    """Seed of child stream j; equals the parent's j-th raw output."""
    return stream_value(seed, j)


def bounded(raw: int, bound: int) -> int:
    """Map one raw 64-bit value onto 0..bound-1 via multiply-high."""
    if bound < 1:
        raise DomainError(f"bound must be positive, got {bound}")
    return (raw * bound) >> 64


def stream_block(seed: int, start: int, count: int) -> np.ndarray:
    """Raw outputs start .. start+count-1 as a uint64 array (vectorized mix64)."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MULT1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MULT2)
    z ^= z >> np.uint64(31)
    return z


def bounded_block(raw: np.ndarray, bound: int) -> np.ndarray:
    """Vectorized multiply-high; exact match of bounded() for bound < 2**32."""
    if not 0 < bound < VECTOR_BOUND_LIMIT:
        raise DomainError(f"vectorized bounded draw needs 0 < bound < 2**32, got {bound}")
    b = np.uint64(bound)
    hi = raw >> np.uint64(32)
    lo = raw & np.uint64(0xFFFFFFFF)
    # (hi*b + (lo*b >> 32)) >> 32 == floor(raw*bound / 2**64), no wraparound.
    return ((hi * b + ((lo * b) >> np.uint64(32))) >> np.uint64(32)).astype(np.int64)


class Stream:
    """Sequential cursor over one stream; records how many values were taken."""

    __slots__ = ("seed", "index")

    def __init__(self, seed: int, index: int = 0):
        self.seed = operator.index(seed) & MASK64
        self.index = operator.index(index)

    def next_raw(self) -> int:
        v = stream_value(self.seed, self.index)
        self.index += 1
        return v

    def next_below(self, bound: int) -> int:
        return bounded(self.next_raw(), bound)

    def take_subset(self, pool: int, size: int) -> tuple[int, ...]:
        """Uniform size-subset of {1..pool} via partial Fisher-Yates; sorted.

        Consumes exactly `size` stream values regardless of outcome.
        """
        if not 0 <= size <= pool:
            raise DomainError(f"cannot take a {size}-subset of {pool} elements")
        arr = list(range(1, pool + 1))
        for i in range(size):
            j = i + self.next_below(pool - i)   # pool - i >= 1 while i < size
            arr[i], arr[j] = arr[j], arr[i]
        return tuple(sorted(arr[:size]))
