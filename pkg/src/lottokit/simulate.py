"""Monte Carlo portfolio simulation with reproducible streams.

Trial tau (0-based, global across workers) owns the child stream seeded
with substream_seed(config.seed, tau) and consumes it in a fixed layout:

  indices 0 .. draw_size-1     Fisher-Yates swaps for the winning draw
  indices draw_size ..         one bounded value per ticket (colex rank of
                               the ticket among all C(pool, ticket) subsets)
  after that                   in unique mode only: single extra values
                               until the portfolio has `tickets` distinct
                               ranks (first-occurrence order is kept)

Because the layout never depends on batching, any worker count, chunk size
or evaluation path reproduces the same per-trial outcomes bit for bit.

Two target evaluation paths cross-check each other:

  direct    unrank every ticket and count matching numbers (reference)
  rank-set  precompute the colex ranks of all high-tier tickets for the
            trial's draw and test sampled ranks for membership; never
            unranks tickets, fast when tickets >> high-tier count

Both consume the stream identically, so forcing either path changes nothing
but speed.
"""

from __future__ import annotations

import math
import operator
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ValidationError
from .probability import Scheme
from .rng import Stream, bounded, bounded_block, stream_block, stream_value, substream_seed
from .verify import resolve_workers

#: 97.5th normal quantile; Wilson 95% score interval.
_Z95 = 1.959963984540054

#: Auto path choice: rank-set once the draw space is this large.
_RANK_SET_MIN_DRAWS = 100_000

TARGET_AT_LEAST = "at-least-fives"
TARGET_JACKPOT = "jackpot"
TARGET_EXACT = "exact-hits"


@dataclass(frozen=True)
class SimTarget:
    """What counts as a portfolio success in one trial."""

    kind: str
    threshold: int = 1      # at-least-fives: minimum number of high-tier hits
    matches: int = 0        # exact-hits: numbers a ticket must share with the draw
    count: int = 0          # exact-hits: required number of such tickets

    @classmethod
    def parse(cls, text: str) -> "SimTarget":
        """"at-least-fives:S", "jackpot", or "exact-hits:MATCHES,COUNT"."""
        kind, sep, arg = text.partition(":")
        kind = kind.strip()
        try:
            if kind == TARGET_JACKPOT and not sep:
                return cls(TARGET_JACKPOT)
            if kind == TARGET_AT_LEAST and not (sep and not arg):
                return cls(TARGET_AT_LEAST, threshold=int(arg) if arg else 1)
            if kind == TARGET_EXACT:
                m, c = arg.split(",")
                return cls(TARGET_EXACT, matches=int(m), count=int(c))
        except ValueError:
            pass
        raise ValidationError(
            f"cannot parse target {text!r}; expected 'at-least-fives:S', 'jackpot' "
            f"or 'exact-hits:MATCHES,COUNT'")

    def describe(self) -> str:
        if self.kind == TARGET_JACKPOT:
            return "jackpot"
        if self.kind == TARGET_AT_LEAST:
            return f"at-least-fives:{self.threshold}"
        return f"exact-hits:{self.matches},{self.count}"

    def validate(self, scheme: Scheme) -> None:
        if self.kind not in (TARGET_AT_LEAST, TARGET_JACKPOT, TARGET_EXACT):
            raise ValidationError(f"unknown target kind {self.kind!r}")
        if self.kind == TARGET_AT_LEAST and self.threshold < 1:
            raise ValidationError("at-least-fives target needs threshold >= 1")
        if self.kind == TARGET_EXACT:
            if not 0 <= self.matches <= scheme.draw_size:
                raise ValidationError(
                    f"exact-hits matches must be in 0..{scheme.draw_size}")
            if self.count < 0:
                raise ValidationError("exact-hits count must be >= 0")


@dataclass(frozen=True)
class SimConfig:
    scheme: Scheme
    tickets: int
    trials: int
    seed: int
    unique: bool = True
    target: SimTarget = SimTarget(TARGET_AT_LEAST, 1)

    def __post_init__(self):
        self.scheme.require_square()
        if operator.index(self.trials) < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if operator.index(self.tickets) < 0:
            raise ValidationError(f"tickets must be >= 0, got {self.tickets}")
        if self.unique and self.tickets > self.scheme.draw_count():
            raise ValidationError(
                f"unique portfolio cannot exceed {self.scheme.draw_count()} tickets")
        self.target.validate(self.scheme)


@dataclass(frozen=True)
class SimResult:
    trials: int
    hits: int
    frequency: Fraction
    wilson_low: float
    wilson_high: float
    seed: int
    method: str
    elapsed_seconds: float

    def json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "hits": self.hits,
            "frequency": {"numerator": str(self.frequency.numerator),
                          "denominator": str(self.frequency.denominator),
                          "decimal": f"{float(self.frequency):.9f}"},
            "wilson95": [self.wilson_low, self.wilson_high],
            "seed": self.seed,
            "method": self.method,
            "elapsed_seconds": self.elapsed_seconds,
        }


def wilson_interval(hits: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """95% score interval for a binomial proportion."""
    if trials < 1:
        raise DomainError("interval needs at least one trial")
    ph = hits / trials
    denom = 1 + z * z / trials
    center = (ph + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(ph * (1 - ph) / trials + z * z / (4 * trials * trials))
    # The score equation has exact roots 0 and 1 at the boundary counts;
    # center - half only misses them by cancellation dust.
    low = 0.0 if hits == 0 else max(0.0, center - half)
    high = 1.0 if hits == trials else min(1.0, center + half)
    return low, high


class _SchemeTables:
    """Per-scheme lookup state shared by every trial."""

    def __init__(self, scheme: Scheme):
        self.scheme = scheme
        n, k = scheme.pool, scheme.ticket_size
        self.n, self.k = n, k
        self.n_draws = scheme.draw_count()
        self.comb = [[math.comb(x, j) for j in range(k + 1)] for x in range(n + 1)]
        self.np_comb = np.array(self.comb, dtype=np.int64)
        self.element_mask = [0] + [1 << x for x in range(1, n + 1)]

    def unrank(self, rank: int) -> tuple[int, ...]:
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

    def mask_of(self, subset) -> int:
        m = 0
        for x in subset:
            m |= self.element_mask[x]
        return m


def _trial_sample_ranks(tables: _SchemeTables, seed_t: int, tickets: int,
                        unique: bool) -> np.ndarray:
    """Ticket ranks for one trial, honoring the fixed consumption layout.

    Doubles mode returns ranks in drawn order, duplicates kept. Unique mode
    returns the distinct set sorted ascending: the portfolio is a set, so
    order carries no information, and sorted output lets callers and debug
    checks stay O(tickets).
    """
    p = tables.scheme.draw_size
    n_draws = tables.n_draws
    if tickets == 0:
        return np.empty(0, dtype=np.int64)
    if tickets < 16:
        # Array overhead dominates tiny portfolios; same values, scalar path.
        vals = [bounded(stream_value(seed_t, p + i), n_draws) for i in range(tickets)]
        if not unique:
            return np.array(vals, dtype=np.int64)
        seen: set[int] = set()
        idx = p + tickets
        queue = iter(vals)
        while len(seen) < tickets:
            r = next(queue, None)
            if r is None:
                r = bounded(stream_value(seed_t, idx), n_draws)
                idx += 1
            seen.add(r)
        return np.array(sorted(seen), dtype=np.int64)
    if n_draws < (1 << 32):
        raw = stream_block(seed_t, p, tickets)
        ranks = bounded_block(raw, n_draws)
    else:
        ranks = np.array([bounded(stream_value(seed_t, p + i), n_draws)
                          for i in range(tickets)], dtype=np.int64)
    if not unique:
        return ranks
    ranks = np.unique(ranks)            # sorted distinct
    need = tickets - len(ranks)
    if need:
        seen = set(ranks.tolist())
        extras = []
        idx = p + tickets
        while need:
            r = bounded(stream_value(seed_t, idx), n_draws)
            idx += 1
            if r not in seen:
                seen.add(r)
                extras.append(r)
                need -= 1
        ranks = np.sort(np.concatenate([ranks, np.array(extras, dtype=np.int64)]))
    assert len(ranks) == tickets and (np.diff(ranks) > 0).all()
    return ranks


def _count_hits_direct(tables: _SchemeTables, draw: tuple[int, ...],
                       ranks: np.ndarray, target: SimTarget) -> bool:
    draw_mask = tables.mask_of(draw)
    threshold = tables.scheme.high_threshold
    p = tables.scheme.draw_size
    high = 0
    exact = 0
    cache: dict[int, int] = {}
    for r in ranks:
        r = int(r)
        overlap = cache.get(r)
        if overlap is None:
            overlap = (tables.mask_of(tables.unrank(r)) & draw_mask).bit_count()
            cache[r] = overlap
        if target.kind == TARGET_EXACT:
            if overlap == target.matches:
                exact += 1
        elif overlap >= threshold:
            if target.kind == TARGET_JACKPOT:
                if overlap == p:
                    return True
            else:
                high += 1
                if high >= target.threshold:
                    return True
    if target.kind == TARGET_EXACT:
        return exact == target.count
    return False


def _high_tier_ranks(tables: _SchemeTables, draw: tuple[int, ...]) -> tuple[np.ndarray, int]:
    """Sorted colex ranks of every ticket meeting the high threshold, plus
    the jackpot rank. Only built for threshold == draw_size - 1."""
    n, k = tables.n, tables.k
    draw_arr = np.array(draw, dtype=np.int64)
    others = np.setdiff1d(np.arange(1, n + 1, dtype=np.int64), draw_arr)
    rows = []
    for drop in range(k):
        kept = np.delete(draw_arr, drop)
        merged = np.empty((len(others), k), dtype=np.int64)
        merged[:, :k - 1] = kept
        merged[:, k - 1] = others
        merged.sort(axis=1)
        rows.append(merged)
    near = np.concatenate(rows)
    ranks = np.zeros(len(near), dtype=np.int64)
    for i in range(k):
        ranks += tables.np_comb[near[:, i] - 1, i + 1]
    jackpot = 0
    for i in range(k):
        jackpot += tables.comb[draw[i] - 1][i + 1]
    return np.sort(ranks), jackpot


def _count_hits_rank_set(tables: _SchemeTables, draw: tuple[int, ...],
                         ranks: np.ndarray, target: SimTarget,
                         sorted_ranks: bool) -> bool:
    near_ranks, jackpot = _high_tier_ranks(tables, draw)
    sample = ranks if sorted_ranks else np.sort(ranks)
    jp_hits = int(np.searchsorted(sample, jackpot, "right")
                  - np.searchsorted(sample, jackpot, "left"))
    if target.kind == TARGET_JACKPOT:
        return jp_hits >= 1
    lo = np.searchsorted(sample, near_ranks, "left")
    hi = np.searchsorted(sample, near_ranks, "right")
    near_hits = int((hi - lo).sum())
    return near_hits + jp_hits >= target.threshold


def _run_span(config: SimConfig, tables: _SchemeTables, method: str,
              span: tuple[int, int]) -> int:
    scheme = config.scheme
    hits = 0
    for trial in range(span[0], span[1]):
        seed_t = substream_seed(config.seed, trial)
        draw = Stream(seed_t).take_subset(scheme.pool, scheme.draw_size)
        ranks = _trial_sample_ranks(tables, seed_t, config.tickets, config.unique)
        if method == "rank-set":
            ok = _count_hits_rank_set(tables, draw, ranks, config.target,
                                      sorted_ranks=config.unique)
        else:
            ok = _count_hits_direct(tables, draw, ranks, config.target)
        hits += ok
    return hits


def resolve_method(config: SimConfig, method: str = "auto") -> str:
    if method not in ("auto", "direct", "rank-set"):
        raise ValidationError(f"method must be auto, direct or rank-set, got {method!r}")
    if method == "rank-set":
        if config.target.kind == TARGET_EXACT:
            raise ValidationError("rank-set path only evaluates high-tier targets")
        if config.scheme.high_threshold != config.scheme.draw_size - 1:
            raise ValidationError(
                "rank-set path requires threshold == draw_size - 1")
        return method
    if method == "direct":
        return method
    if (config.target.kind != TARGET_EXACT
            and config.scheme.high_threshold == config.scheme.draw_size - 1
            and config.scheme.draw_count() >= _RANK_SET_MIN_DRAWS):
        return "rank-set"
    return "direct"


def run_simulation(config: SimConfig, *, workers: int = 1,
                   method: str = "auto") -> SimResult:
    """Estimate the target probability over config.trials independent trials."""
    start = time.perf_counter()
    method = resolve_method(config, method)
    workers = max(1, min(resolve_workers(workers), config.trials))
    step = -(-config.trials // workers)
    spans = [(lo, min(lo + step, config.trials))
             for lo in range(0, config.trials, step)]
    tables = _SchemeTables(config.scheme)
    if len(spans) == 1:
        hits = _run_span(config, tables, method, spans[0])
    else:
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            hits = sum(pool.map(lambda s: _run_span(config, tables, method, s), spans))
    low, high = wilson_interval(hits, config.trials)
    return SimResult(
        trials=config.trials, hits=hits,
        frequency=Fraction(hits, config.trials),
        wilson_low=low, wilson_high=high,
        seed=config.seed, method=method,
        elapsed_seconds=time.perf_counter() - start)
