"""Number-pool restriction analysis ("play inside a lucky subset of numbers").

A pool restriction picks `favored` of the scheme's numbers and buys every
ticket inside that sub-pool. Two different quantities get conflated in folk
reasoning, so the report carries both, clearly labeled:

  pool_at_least   P(the draw lands >= threshold inside the favored sub-pool)
                  = the win probability IF the whole sub-pool budget is bought
  full_at_least   P(>= one high-tier hit) for the SAME ticket budget spread
                  as distinct tickets over the full field

Both are exact; full_at_least additionally ships the hit-power approximation
because published comparison tables usually evaluate it that way.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction

from .combin import binomial
from .errors import DomainError
from .probability import MODE_APPROX_HITS, MODE_EXACT, Scheme, prob_at_least_one_high
from .values import Probability


def prob_winning_in_pool(scheme: Scheme, favored: int, matches: int) -> Probability:
    """P(the draw puts exactly `matches` of its numbers inside the favored sub-pool).

    C(favored, matches) * C(pool - favored, draw_size - matches) / C(pool, draw_size),
    exactly; the k > n -> 0 convention makes impossible layouts exact zeros.
    """
    favored = operator.index(favored)
    matches = operator.index(matches)
    if not 0 <= favored <= scheme.pool:
        raise DomainError(f"favored must be in 0..{scheme.pool}, got {favored}")
    if not 0 <= matches <= scheme.draw_size:
        raise DomainError(f"matches must be in 0..{scheme.draw_size}, got {matches}")
    num = (binomial(favored, matches)
           * binomial(scheme.pool - favored, scheme.draw_size - matches))
    return Probability.exact(Fraction(num, scheme.draw_count()))


def prob_high_in_pool(scheme: Scheme, favored: int) -> Probability:
    """P(the draw lands at least `threshold` of its numbers inside the sub-pool).

    Sums the exact-match terms from the scheme threshold up to the full draw;
    with the default threshold that is the near-miss tier plus the jackpot.
    """
    total = Fraction(0)
    for m in range(scheme.high_threshold, scheme.draw_size + 1):
        total += prob_winning_in_pool(scheme, favored, m).as_fraction()
    return Probability.exact(total)


@dataclass(frozen=True)
class MythReport:
    scheme: Scheme
    favored: int
    ticket_budget: int              # C(favored, ticket_size)
    pool_at_least: Probability               # draw lands >= threshold in the sub-pool
    full_at_least_exact: Probability         # same budget as distinct full-field tickets
    full_at_least_approx: Probability        # hit-power evaluation of the same quantity
    cover_size: int | None = None   # optional user-supplied design size
    cover_at_least_exact: Probability | None = None

    def json_dict(self, decimals: int = 3) -> dict:
        out = {
            "scheme": {"pool": self.scheme.pool, "ticket_size": self.scheme.ticket_size,
                       "draw_size": self.scheme.draw_size,
                       "threshold": self.scheme.high_threshold},
            "favored": self.favored,
            "ticket_budget": str(self.ticket_budget),
            "pool_at_least": self.pool_at_least.json_dict(decimals),
            "full_at_least_exact": self.full_at_least_exact.json_dict(decimals),
            "full_at_least_approx": self.full_at_least_approx.json_dict(decimals),
        }
        if self.cover_size is not None:
            out["cover_size"] = self.cover_size
            out["cover_at_least_exact"] = self.cover_at_least_exact.json_dict(decimals)
        return out


def myth_comparison(scheme: Scheme, favored: int, *,
                    cover_size: int | None = None) -> MythReport:
    """Sub-pool budget vs the same budget spread over the full field.

    favored must be at least ticket_size (otherwise the budget is zero
    tickets and there is nothing to compare). cover_size optionally adds a
    third line: a covering design of that many blocks, same comparison.
    """
    scheme.require_square()
    favored = operator.index(favored)
    if favored < scheme.ticket_size:
        raise DomainError(
            f"favored sub-pool of {favored} numbers buys zero {scheme.ticket_size}-number "
            f"tickets; need favored >= {scheme.ticket_size}")
    if favored > scheme.pool:
        raise DomainError(f"favored must be at most the pool size {scheme.pool}")
    budget = binomial(favored, scheme.ticket_size)
    report = MythReport(
        scheme=scheme,
        favored=favored,
        ticket_budget=budget,
        pool_at_least=prob_high_in_pool(scheme, favored),
        full_at_least_exact=prob_at_least_one_high(scheme, budget, mode=MODE_EXACT),
        full_at_least_approx=prob_at_least_one_high(scheme, budget, mode=MODE_APPROX_HITS),
        cover_size=cover_size,
        cover_at_least_exact=(prob_at_least_one_high(scheme, cover_size, mode=MODE_EXACT)
                              if cover_size is not None else None),
    )
    return report
