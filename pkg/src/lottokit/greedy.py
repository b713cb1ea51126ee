"""Greedy covering-design construction.

Classic set-cover greedy over the colex-ranked candidate space: each round
selects the candidate block covering the most still-uncovered t-subsets,
breaking ties toward the lowest colex rank. Gains are maintained
incrementally: when a t-subset first becomes covered, the gain of every
candidate containing it drops by one, so selection stays O(candidates) per
round with exact gains throughout.

Two candidate strategies:
  exhaustive  every k-subset is a candidate (the deterministic reference)
  sampled     a fresh pool of candidate ranks is drawn each round from a
              seeded stream; results are deterministic per seed
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .designs import Design, make_design
from .errors import ConstructionError, DomainError, ResourceLimitError, ValidationError
from .rng import Stream
from .verify import TARGET_CAP, schonheim_bound

#: Exhaustive strategy keeps a gain per candidate; cap the candidate space.
EXHAUSTIVE_CANDIDATE_CAP = 1_000_000

#: Sampled strategy gives up after this many consecutive zero-gain rounds.
WASTED_ROUND_CAP = 1_000

STRATEGY_EXHAUSTIVE = "exhaustive"
STRATEGY_SAMPLED = "sampled"

ProgressFn = Callable[[int, int, int], None]    # blocks, covered, total


@dataclass(frozen=True)
class GreedyConfig:
    strategy: str = STRATEGY_EXHAUSTIVE
    sample_count: int = 0           # candidates per round (sampled strategy)
    seed: int = 0
    max_blocks: int | None = None

    def __post_init__(self):
        if self.strategy not in (STRATEGY_EXHAUSTIVE, STRATEGY_SAMPLED):
            raise ValidationError(
                f"strategy must be {STRATEGY_EXHAUSTIVE!r} or {STRATEGY_SAMPLED!r}, "
                f"got {self.strategy!r}")
        if self.strategy == STRATEGY_SAMPLED and self.sample_count < 1:
            raise ValidationError("sampled strategy needs sample_count >= 1")


@dataclass(frozen=True)
class GreedyResult:
    design: Design
    bound: int              # covering lower bound for the parameters
    gap: int                # block_count - bound
    rounds: int             # candidate-selection rounds run
    elapsed_seconds: float
    strategy: str


class _CoverState:
    """Shared bookkeeping: comb tables, covered bitset, subset helpers."""

    def __init__(self, pool: int, block_size: int, target_size: int):
        self.n, self.k, self.t = pool, block_size, target_size
        # Plain-list Pascal table; indexed heavily from Python loops below,
        # where list access beats ndarray scalar access severalfold.
        self.comb = [[math.comb(x, j) for j in range(block_size + 1)]
                     for x in range(pool + 1)]
        self.total_targets = self.comb[pool][target_size]
        self.covered = np.zeros(self.total_targets, dtype=bool)
        self.covered_count = 0

    def rank(self, subset: tuple[int, ...], size: int) -> int:
        comb = self.comb
        r = 0
        for i in range(size):
            r += comb[subset[i] - 1][i + 1]
        return r

    def unrank_block(self, rank: int) -> tuple[int, ...]:
        comb = self.comb
        out = []
        r = rank
        for i in range(self.k, 0, -1):
            c = i - 1
            while comb[c + 1][i] <= r:
                c += 1
            out.append(c + 1)
            r -= comb[c][i]
        out.reverse()
        return tuple(out)

    def block_gain(self, block: tuple[int, ...]) -> int:
        covered = self.covered
        gain = 0
        for sub in itertools.combinations(block, self.t):
            if not covered[self.rank(sub, self.t)]:
                gain += 1
        return gain

    def new_subsets(self, block: tuple[int, ...]) -> list[tuple[int, ...]]:
        covered = self.covered
        fresh = []
        for sub in itertools.combinations(block, self.t):
            r = self.rank(sub, self.t)
            if not covered[r]:
                covered[r] = True
                fresh.append(sub)
        self.covered_count += len(fresh)
        return fresh


def _greedy_exhaustive(state: _CoverState, max_blocks: int,
                       progress: ProgressFn | None, progress_every: int):
    n, k, t = state.n, state.k, state.t
    candidates = state.comb[n][k]
    if candidates > EXHAUSTIVE_CANDIDATE_CAP:
        raise ResourceLimitError(
            f"exhaustive strategy enumerates {candidates} candidate blocks, above "
            f"the cap {EXHAUSTIVE_CANDIDATE_CAP}; use the sampled strategy")
    # gains[r] = number of uncovered t-subsets inside the block of rank r.
    gains = np.full(candidates, state.comb[k][t], dtype=np.int32)
    labels = list(range(1, n + 1))
    blocks: list[tuple[int, ...]] = []
    rounds = 0
    while state.covered_count < state.total_targets:
        if len(blocks) >= max_blocks:
            raise ConstructionError(
                f"{max_blocks}-block budget exhausted with "
                f"{state.total_targets - state.covered_count} targets uncovered",
                _partial(state, blocks))
        rounds += 1
        best = int(np.argmax(gains))        # first maximum = lowest colex rank
        block = state.unrank_block(best)
        assert gains[best] > 0 and gains[best] == state.block_gain(block)
        blocks.append(block)
        for sub in state.new_subsets(block):
            inside = set(sub)
            rest = [x for x in labels if x not in inside]
            # Every candidate containing `sub` loses one unit of gain.
            for extra in itertools.combinations(rest, k - t):
                merged = tuple(sorted(sub + extra))
                gains[state.rank(merged, k)] -= 1
        if progress and len(blocks) % progress_every == 0:
            progress(len(blocks), state.covered_count, state.total_targets)
    return blocks, rounds


def _greedy_sampled(state: _CoverState, config: GreedyConfig, max_blocks: int,
                    progress: ProgressFn | None, progress_every: int):
    n, k = state.n, state.k
    candidates = state.comb[n][k]
    stream = Stream(config.seed)
    blocks: list[tuple[int, ...]] = []
    rounds = 0
    wasted = 0
    while state.covered_count < state.total_targets:
        if len(blocks) >= max_blocks:
            raise ConstructionError(
                f"{max_blocks}-block budget exhausted with "
                f"{state.total_targets - state.covered_count} targets uncovered",
                _partial(state, blocks))
        rounds += 1
        best_gain, best_rank, best_block = 0, None, None
        for _ in range(config.sample_count):
            r = stream.next_below(candidates)
            if r == best_rank:
                continue
            block = state.unrank_block(r)
            gain = state.block_gain(block)
            if gain > best_gain or (gain == best_gain and gain > 0
                                    and (best_rank is None or r < best_rank)):
                best_gain, best_rank, best_block = gain, r, block
        if best_block is None:
            wasted += 1
            if wasted >= WASTED_ROUND_CAP:
                raise ConstructionError(
                    f"{WASTED_ROUND_CAP} consecutive sampled rounds found no "
                    f"productive candidate; increase sample_count",
                    _partial(state, blocks))
            continue
        wasted = 0
        blocks.append(best_block)
        state.new_subsets(best_block)
        if progress and len(blocks) % progress_every == 0:
            progress(len(blocks), state.covered_count, state.total_targets)
    return blocks, rounds


def _partial(state: _CoverState, blocks: list[tuple[int, ...]]) -> Design | None:
    if not blocks:
        return None
    return make_design(state.n, state.k, state.t, blocks,
                       provenance="partial greedy cover")


def greedy_cover(pool: int, block_size: int, target_size: int,
                 config: GreedyConfig = GreedyConfig(), *,
                 target_cap: int = TARGET_CAP,
                 progress: ProgressFn | None = None,
                 progress_every: int = 1_000) -> GreedyResult:
    """Construct a covering design for (pool, block_size, target_size).

    The result always verifies (the loop only stops at full coverage) and its
    size is reported against the covering lower bound. max_blocks, when set,
    must be at least that bound; hitting it raises ConstructionError with the
    partial design attached.
    """
    start = time.perf_counter()
    bound = schonheim_bound(pool, block_size, target_size)
    if config.max_blocks is not None and config.max_blocks < bound:
        raise DomainError(
            f"max_blocks {config.max_blocks} is below the covering lower bound {bound}")
    state = _CoverState(pool, block_size, target_size)
    if state.total_targets > target_cap:
        raise ResourceLimitError(
            f"construction tracks {state.total_targets} targets, above the cap "
            f"{target_cap}; raise --max-targets to proceed")
    max_blocks = config.max_blocks if config.max_blocks is not None else state.comb[pool][block_size]
    if config.strategy == STRATEGY_EXHAUSTIVE:
        blocks, rounds = _greedy_exhaustive(state, max_blocks, progress, progress_every)
    else:
        blocks, rounds = _greedy_sampled(state, config, max_blocks, progress, progress_every)
    design = make_design(
        pool, block_size, target_size, blocks,
        provenance=f"greedy {config.strategy} cover of ({pool}, {block_size}, {target_size})")
    return GreedyResult(design=design, bound=bound, gap=design.block_count - bound,
                        rounds=rounds, elapsed_seconds=time.perf_counter() - start,
                        strategy=config.strategy)
