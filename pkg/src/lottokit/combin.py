"""Exact combinatorial kernels: binomials, colex subset ranking, overlap ratios.

Subsets are tuples of 1-based element labels in strictly increasing order.
Ranks are 0-based colexicographic:

    rank(s) = sum over positions i (0-based) of C(s[i] - 1, i + 1)

The formula never mentions the universe size, so ranks stream off sorted
blocks directly, and for every n >= max(s) it is the same bijection from
k-subsets of {1..n} onto 0 .. C(n,k)-1, ordered by largest element, then
second largest, and so on.
"""

from __future__ import annotations

import math
import operator
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ValidationError

#: Refuse absurd arguments instead of grinding on million-digit integers.
MAX_BINOMIAL_N = 10 ** 8


def binomial(n: int, k: int) -> int:
    """Exact C(n, k). Follows the k > n -> 0 convention; negatives are errors."""
    n = operator.index(n)
    k = operator.index(k)
    if n < 0 or k < 0:
        raise DomainError(f"binomial arguments must be non-negative, got ({n}, {k})")
    if n > MAX_BINOMIAL_N:
        raise DomainError(f"binomial argument {n} exceeds the {MAX_BINOMIAL_N} size guard")
    return math.comb(n, k)


def validate_subset(elements: Iterable[int], *, size: int | None = None,
                    pool: int | None = None) -> tuple[int, ...]:
    """Normalize to a tuple of ints; enforce strictly increasing 1-based labels."""
    out = []
    prev = 0
    for x in elements:
        try:
            x = operator.index(x)
        except TypeError:
            raise ValidationError(f"subset element {x!r} is not an integer") from None
        if x <= prev:
            if x < 1:
                raise ValidationError(f"subset element {x} is below 1")
            raise ValidationError(
                f"subset elements must be strictly increasing, got {x} after {prev}")
        out.append(x)
        prev = x
    if size is not None and len(out) != size:
        raise ValidationError(f"expected a {size}-element subset, got {len(out)} elements")
    if pool is not None and out and out[-1] > pool:
        raise ValidationError(f"subset element {out[-1]} exceeds the pool size {pool}")
    return tuple(out)


def rank_colex(subset: Sequence[int], *, pool: int | None = None) -> int:
    """0-based colex rank of a strictly increasing 1-based subset."""
    s = validate_subset(subset, pool=pool)
    return sum(math.comb(s[i] - 1, i + 1) for i in range(len(s)))


def unrank_colex(rank: int, size: int, *, pool: int | None = None) -> tuple[int, ...]:
    """Inverse of rank_colex for the given subset size.

    Works by picking, from the top position down, the largest label c with
    C(c - 1, position) <= remaining rank.
    """
    rank = operator.index(rank)
    size = operator.index(size)
    if size < 1:
        raise ValidationError(f"subset size must be at least 1, got {size}")
    if rank < 0:
        raise ValidationError(f"rank must be non-negative, got {rank}")
    if pool is not None and rank >= binomial(pool, size):
        raise ValidationError(
            f"rank {rank} is out of range for {size}-subsets of a {pool}-element pool")
    out = []
    r = rank
    for i in range(size, 0, -1):
        c = i - 1                       # C(i - 1, i) = 0 <= r always
        while math.comb(c + 1, i) <= r:
            c += 1
        out.append(c + 1)
        r -= math.comb(c, i)
    out.reverse()
    return tuple(out)


def ratio_no_overlap(population: int, excluded: int, draws: int) -> Fraction:
    """P() that `draws` distinct uniform picks from `population` avoid `excluded` marked items.

    Exactly C(population - excluded, draws) / C(population, draws), computed as
    the `excluded`-factor product of (population - draws - j) / (population - j)
    so the two huge binomials are never materialized.
    """
    population = operator.index(population)
    excluded = operator.index(excluded)
    draws = operator.index(draws)
    if population < 0 or excluded < 0 or draws < 0:
        raise DomainError("population, excluded and draws must be non-negative")
    if draws > population:
        raise DomainError(f"cannot draw {draws} distinct items from a population of {population}")
    if excluded + draws > population:
        return Fraction(0)
    result = Fraction(1)
    for j in range(excluded):
        result *= Fraction(population - draws - j, population - j)
    return result


def binomial_table(pool: int, width: int) -> np.ndarray:
    """Dense C(x, j) lookup, shape (pool + 1, width + 1), int64.

    Backs the vectorized rank computations; callers cap pool/width so the
    largest entry stays far inside int64.
    """
    pool = operator.index(pool)
    width = operator.index(width)
    if pool < 0 or width < 0:
        raise DomainError("table bounds must be non-negative")
    if binomial(pool, min(width, pool // 2 if pool else 0)) >= 2 ** 62:
        raise DomainError("binomial table entries would overflow int64")
    table = np.zeros((pool + 1, width + 1), dtype=np.int64)
    table[:, 0] = 1
    for x in range(1, pool + 1):
        hi = min(x, width)
        table[x, 1:hi + 1] = table[x - 1, 1:hi + 1] + table[x - 1, 0:hi]
    return table


def rank_rows(blocks: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Colex ranks of many sorted rows at once; blocks is (B, k), 1-based labels."""
    ranks = np.zeros(len(blocks), dtype=np.int64)
    for i in range(blocks.shape[1]):
        ranks += table[blocks[:, i] - 1, i + 1]
    return ranks
