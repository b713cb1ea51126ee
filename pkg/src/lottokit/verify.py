"""Design verification over a bitset indexed by colex rank, plus lower bounds.

verify_covering: every t-subset of the pool must lie inside some block.
verify_lottery: every draw_size-subset (potential draw) must share at least
target_size numbers with some block.

Both walk the blocks once, marking what each block takes care of in a byte
array indexed by colex rank, then scan for unmarked targets. Marking is
idempotent (constant True stores), so block shards can run on threads into
the shared array in any order and the report is identical for any worker
count. The lottery walk has a closed-form marking pass only for the
k = draw_size, t = draw_size - 1 layout (the interesting one); other
lottery shapes fall back to scanning every draw against every block, which
is guarded by a work cap.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .combin import binomial, binomial_table, rank_rows, unrank_colex
from .designs import Design
from .errors import DomainError, ResourceLimitError, ValidationError

#: Default ceiling on the number of target subsets (bitset bytes).
TARGET_CAP = 2 ** 31

#: Default ceiling on block x draw membership tests in the fallback scan.
SCAN_CAP = 50_000_000

_CHUNK_BLOCKS = 65_536      # block rows per marking slice, bounds temporaries
_SCAN_CHUNK = 1 << 20       # bitset bytes per uncovered-scan slice


@dataclass(frozen=True)
class VerificationReport:
    kind: str
    pool: int
    block_size: int
    target_size: int
    draw_size: int | None
    block_count: int
    duplicate_blocks: int
    total_targets: int
    covered_count: int
    uncovered_count: int
    witnesses: tuple[tuple[int, ...], ...]
    operations: int             # bit marks (bitset paths) or membership tests (scan)
    elapsed_seconds: float
    algorithm: str

    @property
    def valid(self) -> bool:
        return self.uncovered_count == 0

    def json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "pool": self.pool,
            "block_size": self.block_size,
            "target_size": self.target_size,
            "draw_size": self.draw_size,
            "block_count": self.block_count,
            "duplicate_blocks": self.duplicate_blocks,
            "total_targets": str(self.total_targets),
            "covered_count": str(self.covered_count),
            "uncovered_count": str(self.uncovered_count),
            "witnesses": [list(w) for w in self.witnesses],
            "operations": self.operations,
            "elapsed_seconds": self.elapsed_seconds,
            "algorithm": self.algorithm,
            "valid": self.valid,
        }


def resolve_workers(workers: int) -> int:
    if workers < 0:
        raise DomainError(f"workers must be >= 0, got {workers}")
    if workers == 0:
        return min(4, os.cpu_count() or 1)
    return workers


def _check_target_cap(total: int, target_cap: int) -> None:
    if total > target_cap:
        raise ResourceLimitError(
            f"verification needs a bitset of {total} targets, above the cap "
            f"{target_cap}; raise --max-targets if you really want to allocate it")


def _shards(count: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, count))
    step = -(-count // workers)
    return [(lo, min(lo + step, count)) for lo in range(0, count, step)]


def _scan_uncovered(covered: np.ndarray, witness_cap: int,
                    unrank_size: int) -> tuple[int, list[tuple[int, ...]]]:
    uncovered = 0
    witnesses: list[tuple[int, ...]] = []
    for lo in range(0, len(covered), _SCAN_CHUNK):
        chunk = covered[lo:lo + _SCAN_CHUNK]
        missing = int(len(chunk) - np.count_nonzero(chunk))
        if not missing:
            continue
        uncovered += missing
        if len(witnesses) < witness_cap:
            for idx in np.flatnonzero(~chunk):
                if len(witnesses) >= witness_cap:
                    break
                witnesses.append(unrank_colex(int(lo + idx), unrank_size))
    return uncovered, witnesses


def verify_covering(design: Design, *, witness_cap: int = 10,
                    target_cap: int = TARGET_CAP, workers: int = 1) -> VerificationReport:
    """Check a covering design: every t-subset inside some block."""
    if design.draw_size is not None:
        raise ValidationError(
            "design carries a lottery header; convert with to_covering() or "
            "verify it as a lottery")
    if witness_cap < 0:
        raise DomainError(f"witness cap must be >= 0, got {witness_cap}")
    start = time.perf_counter()
    n, k, t = design.pool, design.block_size, design.target_size
    total = binomial(n, t)
    _check_target_cap(total, target_cap)
    workers = resolve_workers(workers)
    table = binomial_table(n, t)
    covered = np.zeros(total, dtype=bool)
    col_sets = list(itertools.combinations(range(k), t))

    def mark(span: tuple[int, int]) -> None:
        for lo in range(span[0], span[1], _CHUNK_BLOCKS):
            rows = design.blocks[lo:min(lo + _CHUNK_BLOCKS, span[1])].astype(np.int64)
            for cols in col_sets:
                covered[rank_rows(rows[:, cols], table)] = True

    spans = _shards(design.block_count, workers)
    if len(spans) == 1:
        mark(spans[0])
    else:
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            list(pool.map(mark, spans))
    operations = design.block_count * len(col_sets)
    uncovered, witnesses = _scan_uncovered(covered, witness_cap, t)
    return VerificationReport(
        kind="covering", pool=n, block_size=k, target_size=t, draw_size=None,
        block_count=design.block_count, duplicate_blocks=design.duplicate_count(),
        total_targets=total, covered_count=total - uncovered,
        uncovered_count=uncovered, witnesses=tuple(witnesses),
        operations=operations, elapsed_seconds=time.perf_counter() - start,
        algorithm="bitset-colex")


def _mark_lottery_near(design: Design, covered: np.ndarray, table: np.ndarray,
                       span: tuple[int, int]) -> None:
    # k == draw_size == t + 1 layout: the draws sharing >= t numbers with a
    # block are exactly the draws obtained by replacing one block number with
    # any other label (plus the block itself, re-marked k times as x runs
    # over the block's own labels).
    n, k = design.pool, design.block_size
    for lo in range(span[0], span[1], _CHUNK_BLOCKS):
        rows = design.blocks[lo:min(lo + _CHUNK_BLOCKS, span[1])].astype(np.int64)
        merged = np.empty((len(rows), k), dtype=np.int64)
        for drop in range(k):
            cols = [c for c in range(k) if c != drop]
            kept = rows[:, cols]
            for x in range(1, n + 1):
                np.concatenate([kept, np.full((len(rows), 1), x, dtype=np.int64)],
                               axis=1, out=merged)
                merged.sort(axis=1)
                ranks = rank_rows(merged, table)
                valid = (kept != x).all(axis=1)
                covered[ranks[valid]] = True


def verify_lottery(design: Design, *, witness_cap: int = 10,
                   target_cap: int = TARGET_CAP, scan_cap: int = SCAN_CAP,
                   workers: int = 1) -> VerificationReport:
    """Check a lottery design: every potential draw hits some block in >= t numbers."""
    if design.draw_size is None:
        raise ValidationError(
            "design carries a covering header; convert with to_lottery() or "
            "verify it as a covering")
    if witness_cap < 0:
        raise DomainError(f"witness cap must be >= 0, got {witness_cap}")
    start = time.perf_counter()
    n, k, p, t = design.pool, design.block_size, design.draw_size, design.target_size
    total = binomial(n, p)
    _check_target_cap(total, target_cap)
    workers = resolve_workers(workers)

    if k == p and t == p - 1:
        table = binomial_table(n, p)
        covered = np.zeros(total, dtype=bool)
        spans = _shards(design.block_count, workers)
        if len(spans) == 1:
            _mark_lottery_near(design, covered, table, spans[0])
        else:
            with ThreadPoolExecutor(max_workers=len(spans)) as pool:
                list(pool.map(
                    lambda s: _mark_lottery_near(design, covered, table, s), spans))
        operations = design.block_count * k * (n - k + 1)
        algorithm = "bitset-near-miss"
    elif k == p and t == p:
        # A draw is covered only by being one of the blocks.
        table = binomial_table(n, p)
        covered = np.zeros(total, dtype=bool)
        covered[rank_rows(design.blocks.astype(np.int64), table)] = True
        operations = design.block_count
        algorithm = "bitset-exact"
    else:
        return _verify_lottery_scan(design, witness_cap, scan_cap, start)

    uncovered, witnesses = _scan_uncovered(covered, witness_cap, p)
    return VerificationReport(
        kind="lottery", pool=n, block_size=k, target_size=t, draw_size=p,
        block_count=design.block_count, duplicate_blocks=design.duplicate_count(),
        total_targets=total, covered_count=total - uncovered,
        uncovered_count=uncovered, witnesses=tuple(witnesses),
        operations=operations, elapsed_seconds=time.perf_counter() - start,
        algorithm=algorithm)


def _verify_lottery_scan(design: Design, witness_cap: int, scan_cap: int,
                         start: float) -> VerificationReport:
    # Generic layout: test every draw against blocks until one hits, colex
    # draw order, bitmask intersection counts. Work is capped because the
    # product of draws and blocks explodes quickly.
    n, k, p, t = design.pool, design.block_size, design.draw_size, design.target_size
    total = binomial(n, p)
    if n > 63:
        raise ResourceLimitError(
            f"generic lottery scan supports pools up to 63 labels, got {n}; "
            f"use the k = draw size, t = draw size - 1 layout instead")
    if total * design.block_count > scan_cap:
        raise ResourceLimitError(
            f"generic lottery scan needs {total * design.block_count} membership "
            f"tests, above the cap {scan_cap}; raise --scan-cap, shrink the "
            f"design, or use the k = draw size, t = draw size - 1 layout")
    block_masks = []
    for row in design.blocks:
        m = 0
        for x in row:
            m |= 1 << int(x)
        block_masks.append(m)
    uncovered = 0
    witnesses: list[tuple[int, ...]] = []
    operations = 0
    # itertools yields draws in lex order; rank order is irrelevant here
    # because every draw is visited exactly once.
    for draw in itertools.combinations(range(1, n + 1), p):
        dm = 0
        for x in draw:
            dm |= 1 << x
        hit = False
        for bm in block_masks:
            operations += 1
            if (dm & bm).bit_count() >= t:
                hit = True
                break
        if not hit:
            uncovered += 1
            if len(witnesses) < witness_cap:
                witnesses.append(draw)
    return VerificationReport(
        kind="lottery", pool=n, block_size=k, target_size=t, draw_size=p,
        block_count=design.block_count, duplicate_blocks=design.duplicate_count(),
        total_targets=total, covered_count=total - uncovered,
        uncovered_count=uncovered, witnesses=tuple(witnesses),
        operations=operations, elapsed_seconds=time.perf_counter() - start,
        algorithm="scan")


def schonheim_chain(pool: int, block_size: int, target_size: int) -> tuple[int, ...]:
    """Nested-ceiling covering lower bounds, innermost level first.

    Level i (0-based) multiplies by (pool - target_size + 1 + i) and divides
    by (block_size - target_size + 1 + i), taking the ceiling each time; the
    last entry is the bound for the full (pool, block_size, target_size)
    problem.
    """
    n, k, t = pool, block_size, target_size
    if not 1 <= t <= k <= n:
        raise DomainError(f"need 1 <= t <= k <= n, got ({n}, {k}, {t})")
    chain = []
    bound = 1
    for i in range(t):
        num = (n - t + 1 + i) * bound
        den = k - t + 1 + i
        bound = -(-num // den)
        chain.append(bound)
    return tuple(chain)


def schonheim_bound(pool: int, block_size: int, target_size: int) -> int:
    return schonheim_chain(pool, block_size, target_size)[-1]
