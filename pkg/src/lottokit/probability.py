"""Closed-form win probabilities for fixed-size lottery schemes.

A scheme draws `draw_size` numbers from a pool of `pool`; a ticket marks
`ticket_size` numbers; `threshold` matches win the prize tier of interest.
All hit-count formulas assume square tickets (ticket_size == draw_size);
anything else raises UnsupportedSchemeError so callers cannot silently get
wrong numbers.

Three evaluation modes for "no high hit among v tickets":

  exact          C(N - W, v) / C(N, v), an exact rational (W = number of
                 winning draw combinations, N = total draw combinations)
  approx-tickets (1 - W/N) ** v, tickets treated as independent
  approx-hits    (1 - v/N) ** W, winning combinations treated as independent

Approximate modes and doubles-allowed portfolios evaluate in Decimal
arithmetic carrying APPROX_DIGITS significant digits.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .combin import binomial, ratio_no_overlap
from .errors import DomainError, UnsupportedSchemeError, ValidationError
from .values import APPROX_DIGITS, Probability

MODE_EXACT = "exact"
MODE_APPROX_TICKETS = "approx-tickets"
MODE_APPROX_HITS = "approx-hits"
MODES = (MODE_EXACT, MODE_APPROX_TICKETS, MODE_APPROX_HITS)


@dataclass(frozen=True)
class Scheme:
    """Lottery scheme: pool size, ticket size, draw size, win threshold.

    threshold defaults to draw_size - 1 ("one short of the full draw"),
    the tier the high-hit formulas quantify.
    """

    pool: int
    ticket_size: int
    draw_size: int
    threshold: int | None = None

    def __post_init__(self):
        for name in ("pool", "ticket_size", "draw_size"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValidationError(f"{name} must be a positive integer, got {v!r}")
        if max(self.ticket_size, self.draw_size) > self.pool:
            raise ValidationError(
                f"ticket size {self.ticket_size} / draw size {self.draw_size} "
                f"exceed the pool size {self.pool}")
        t = self.threshold
        if t is not None:
            if not isinstance(t, int) or t < 0:
                raise ValidationError(f"threshold must be a non-negative integer, got {t!r}")
            if t > min(self.ticket_size, self.draw_size):
                raise ValidationError(
                    f"threshold {t} exceeds min(ticket size, draw size) "
                    f"= {min(self.ticket_size, self.draw_size)}")

    @property
    def high_threshold(self) -> int:
        return self.draw_size - 1 if self.threshold is None else self.threshold

    def draw_count(self) -> int:
        """N: number of possible draws."""
        return binomial(self.pool, self.draw_size)

    def ticket_count(self) -> int:
        """Number of distinct tickets."""
        return binomial(self.pool, self.ticket_size)

    def require_square(self) -> None:
        if self.ticket_size != self.draw_size:
            raise UnsupportedSchemeError(
                f"hit-count formulas require ticket size == draw size, "
                f"got {self.ticket_size} != {self.draw_size}")


DEFAULT_SCHEME = Scheme(49, 6, 6, 5)


def hit_combinations(scheme: Scheme, matches: int) -> int:
    """Number of draws sharing exactly `matches` numbers with a fixed ticket.

    C(p, matches) * C(pool - p, p - matches) with p = draw size.
    """
    scheme.require_square()
    p = scheme.draw_size
    matches = operator.index(matches)
    if not 0 <= matches <= p:
        raise DomainError(f"matches must be in 0..{p}, got {matches}")
    return binomial(p, matches) * binomial(scheme.pool - p, p - matches)


@dataclass(frozen=True)
class HitSpectrum:
    """Per-match-count draw combinations for one fixed ticket."""

    scheme: Scheme
    counts: tuple[int, ...]     # index = number of matches, 0..draw_size
    total: int                  # N, equals sum(counts)

    def probability(self, matches: int) -> Probability:
        return Probability.exact(Fraction(self.counts[matches], self.total))

    def entries(self):
        for m, c in enumerate(self.counts):
            yield m, c, self.probability(m)


def hit_spectrum(scheme: Scheme) -> HitSpectrum:
    counts = tuple(hit_combinations(scheme, m) for m in range(scheme.draw_size + 1))
    total = scheme.draw_count()
    if sum(counts) != total:
        raise DomainError("hit spectrum does not partition the draw space")
    return HitSpectrum(scheme, counts, total)


def high_hit_count(scheme: Scheme) -> int:
    """W: draws matching the ticket at threshold or above (threshold one short
    of the full draw gives the near-miss tier plus the jackpot)."""
    scheme.require_square()
    t = scheme.high_threshold
    return sum(hit_combinations(scheme, m) for m in range(t, scheme.draw_size + 1))


def _shifted_ratio(population: int, marked: int, chosen: int, draws: int) -> Fraction:
    """C(population - marked, draws - chosen) / C(population, draws), exact.

    Product form with `marked` factors:
        prod_{i<chosen} (draws - i) * prod_{j<marked-chosen} (population - draws - j)
        / prod_{l<marked} (population - l)
    Returns 0 when the numerator binomial is empty.
    """
    if draws - chosen < 0 or draws - chosen > population - marked:
        return Fraction(0)
    num = 1
    for i in range(chosen):
        num *= draws - i
    for j in range(marked - chosen):
        num *= population - draws - j
    den = 1
    for l in range(marked):
        den *= population - l
    return Fraction(num, den)


def pmf_exact_hits(scheme: Scheme, matches: int, count: int, tickets: int) -> Probability:
    """P(exactly `count` of `tickets` distinct tickets match the draw in
    exactly `matches` numbers).

    Hypergeometric over the ticket universe. Uses whichever of (hit
    combinations, tickets) is smaller as the product length, so neither
    C(N, tickets) nor C(N, M) is ever materialized.
    """
    scheme.require_square()
    n_draws = scheme.draw_count()
    m_hits = hit_combinations(scheme, matches)
    tickets = operator.index(tickets)
    count = operator.index(count)
    if tickets < 0 or tickets > n_draws:
        raise DomainError(f"tickets must be in 0..{n_draws}, got {tickets}")
    if count < 0 or count > min(m_hits, tickets):
        raise DomainError(
            f"count must be in 0..min({m_hits}, {tickets}), got {count}")
    if tickets - count > n_draws - m_hits:
        return Probability.exact(0)
    if m_hits <= tickets:
        value = binomial(m_hits, count) * _shifted_ratio(n_draws, m_hits, count, tickets)
    else:
        value = binomial(tickets, count) * _shifted_ratio(n_draws, tickets, count, m_hits)
    return Probability.exact(value)


def pmf_joint_high_hits(scheme: Scheme, near_hits: int, full_hits: int,
                        tickets: int) -> Probability:
    """P(exactly near_hits threshold-tier tickets AND full_hits jackpot tickets
    among `tickets` distinct tickets).

    Bivariate hypergeometric; the normalizing C(N, tickets) cancels into a
    product of near_hits + full_hits + W factors.
    """
    scheme.require_square()
    n_draws = scheme.draw_count()
    m_near = hit_combinations(scheme, scheme.high_threshold)
    m_full = hit_combinations(scheme, scheme.draw_size)
    near_hits = operator.index(near_hits)
    full_hits = operator.index(full_hits)
    tickets = operator.index(tickets)
    if not 0 <= near_hits <= m_near:
        raise DomainError(f"near_hits must be in 0..{m_near}, got {near_hits}")
    if not 0 <= full_hits <= m_full:
        raise DomainError(f"full_hits must be in 0..{m_full}, got {full_hits}")
    if near_hits + full_hits > tickets or tickets > n_draws:
        raise DomainError(
            f"tickets must be in {near_hits + full_hits}..{n_draws}, got {tickets}")
    chosen = near_hits + full_hits
    marked = m_near + m_full
    value = (binomial(m_near, near_hits) * binomial(m_full, full_hits)
             * _shifted_ratio(n_draws, marked, chosen, tickets))
    return Probability.exact(value)


def _require_mode(mode: str) -> None:
    if mode not in MODES:
        raise DomainError(f"mode must be one of {', '.join(MODES)}; got {mode!r}")


def prob_no_high_hit(scheme: Scheme, tickets: int, mode: str = MODE_EXACT) -> Probability:
    """P(none of `tickets` distinct tickets reaches the high tier)."""
    scheme.require_square()
    _require_mode(mode)
    n_draws = scheme.draw_count()
    winners = high_hit_count(scheme)
    tickets = operator.index(tickets)
    if tickets < 0 or tickets > n_draws:
        raise DomainError(f"tickets must be in 0..{n_draws}, got {tickets}")
    if mode == MODE_EXACT:
        return Probability.exact(ratio_no_overlap(n_draws, winners, tickets))
    with localcontext() as ctx:
        ctx.prec = APPROX_DIGITS
        if mode == MODE_APPROX_TICKETS:
            base = 1 - Decimal(winners) / Decimal(n_draws)
            value = base ** tickets
        else:
            base = 1 - Decimal(tickets) / Decimal(n_draws)
            value = base ** winners
    return Probability.approximate(value)


def prob_at_least_one_high(scheme: Scheme, tickets: int, *, unique: bool = True,
                           mode: str = MODE_EXACT) -> Probability:
    """P(at least one ticket reaches the high tier) for a portfolio of `tickets`.

    unique=True: tickets are distinct; complement of prob_no_high_hit.
    unique=False: tickets drawn independently (duplicates allowed); the exact
    value is (1 - (1 - W/N) ** tickets) evaluated in extended precision, and
    approximation modes are rejected because the formula is already a power.
    """
    scheme.require_square()
    _require_mode(mode)
    tickets = operator.index(tickets)
    if tickets < 0:
        raise DomainError(f"tickets must be non-negative, got {tickets}")
    if unique:
        inner = prob_no_high_hit(scheme, tickets, mode)
        if inner.is_exact:
            return Probability.exact(1 - inner.as_fraction())
        with localcontext() as ctx:
            ctx.prec = APPROX_DIGITS
            return Probability.approximate(+(1 - inner.value))
    if mode != MODE_EXACT:
        raise DomainError("approximation modes apply to unique-ticket portfolios only")
    n_draws = scheme.draw_count()
    winners = high_hit_count(scheme)
    with localcontext() as ctx:
        ctx.prec = APPROX_DIGITS
        miss = 1 - Decimal(winners) / Decimal(n_draws)
        value = +(1 - miss ** tickets)
    return Probability.approximate(value)


def prob_jackpot(scheme: Scheme, tickets: int, *, unique: bool = True) -> Probability:
    """P(some ticket matches the draw completely)."""
    scheme.require_square()
    tickets = operator.index(tickets)
    if tickets < 0:
        raise DomainError(f"tickets must be non-negative, got {tickets}")
    n_draws = scheme.draw_count()
    if unique:
        if tickets > n_draws:
            raise DomainError(f"distinct tickets cannot exceed {n_draws}, got {tickets}")
        return Probability.exact(Fraction(tickets, n_draws))
    with localcontext() as ctx:
        ctx.prec = APPROX_DIGITS
        miss = 1 - 1 / Decimal(n_draws)
        value = +(1 - miss ** tickets)
    return Probability.approximate(value)


def prob_at_least_s_high(scheme: Scheme, min_hits: int, tickets: int) -> Probability:
    """P(total high-tier hits, near-miss and jackpot together, >= min_hits).

    Complement sums the joint pmf over the at most 2*min_hits pairs with
    near + full < min_hits. min_hits = 0 is certain; min_hits is capped by
    the near-miss tier count.
    """
    scheme.require_square()
    min_hits = operator.index(min_hits)
    tickets = operator.index(tickets)
    m_near = hit_combinations(scheme, scheme.high_threshold)
    if not 0 <= min_hits <= m_near:
        raise DomainError(f"min_hits must be in 0..{m_near}, got {min_hits}")
    if tickets < 0 or tickets > scheme.draw_count():
        raise DomainError(f"tickets must be in 0..{scheme.draw_count()}, got {tickets}")
    m_full = hit_combinations(scheme, scheme.draw_size)
    total = Fraction(0)
    for near in range(min_hits):
        for full in range(min(m_full, min_hits - 1 - near) + 1):
            if near + full > tickets:
                continue
            total += pmf_joint_high_hits(scheme, near, full, tickets).as_fraction()
    return Probability.exact(1 - total)
