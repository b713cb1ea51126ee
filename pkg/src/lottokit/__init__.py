"""Exact lottery probabilities, covering-design tools, reproducible simulation."""

from .combin import binomial, rank_colex, ratio_no_overlap, unrank_colex
from .designs import (Design, enumerate_full_design, format_design, make_design,
                      parse_design, parse_design_file, write_design_file)
from .errors import (ConstructionError, DomainError, LottoError, ParseError,
                     ResourceLimitError, UnsupportedSchemeError, ValidationError)
from .greedy import GreedyConfig, GreedyResult, greedy_cover
from .myths import MythReport, myth_comparison, prob_high_in_pool, prob_winning_in_pool
from .probability import (DEFAULT_SCHEME, MODE_APPROX_HITS, MODE_APPROX_TICKETS,
                          MODE_EXACT, HitSpectrum, Scheme, hit_combinations,
                          hit_spectrum, pmf_exact_hits, pmf_joint_high_hits,
                          prob_at_least_one_high, prob_at_least_s_high,
                          prob_jackpot, prob_no_high_hit)
from .simulate import (SimConfig, SimResult, SimTarget, run_simulation,
                       wilson_interval)
from .values import Probability
from .verify import (VerificationReport, schonheim_bound, schonheim_chain,
                     verify_covering, verify_lottery)

__version__ = "0.1.0"

__all__ = [
    "binomial", "rank_colex", "unrank_colex", "ratio_no_overlap",
    "Design", "make_design", "parse_design", "parse_design_file",
    "format_design", "write_design_file", "enumerate_full_design",
    "LottoError", "ValidationError", "DomainError", "UnsupportedSchemeError",
    "ParseError", "ResourceLimitError", "ConstructionError",
    "GreedyConfig", "GreedyResult", "greedy_cover",
    "MythReport", "myth_comparison", "prob_winning_in_pool", "prob_high_in_pool",
    "Scheme", "DEFAULT_SCHEME", "HitSpectrum", "hit_spectrum", "hit_combinations",
    "MODE_EXACT", "MODE_APPROX_TICKETS", "MODE_APPROX_HITS",
    "pmf_exact_hits", "pmf_joint_high_hits", "prob_no_high_hit",
    "prob_at_least_one_high", "prob_at_least_s_high", "prob_jackpot",
    "SimConfig", "SimResult", "SimTarget", "run_simulation", "wilson_interval",
    "Probability",
    "VerificationReport", "verify_covering", "verify_lottery",
    "schonheim_bound", "schonheim_chain",
    "__version__",
]
