import math
from fractions import Fraction

import pytest

from lottokit import (
    Scheme,
    SimConfig,
    SimResult,
    SimTarget,
    ValidationError,
    pmf_exact_hits,
    prob_at_least_one_high,
    run_simulation,
    wilson_interval,
)
from lottokit.probability import DEFAULT_SCHEME as S49
from lottokit.simulate import resolve_method

S10 = Scheme(10, 4, 4, 3)
S12 = Scheme(12, 5, 5, 4)


class TestTargetParsing:
    def test_at_least_fives(self):
        t = SimTarget.parse("at-least-fives:3")
        assert t.kind == "at-least-fives" and t.threshold == 3
        assert SimTarget.parse("at-least-fives").threshold == 1

    def test_jackpot(self):
        t = SimTarget.parse("jackpot")
        assert t.kind == "jackpot"

    def test_exact_hits(self):
        t = SimTarget.parse("exact-hits:3,2")
        assert t.kind == "exact-hits"
        assert t.matches == 3 and t.count == 2

    def test_describe_round_trips(self):
        for text in ("at-least-fives:2", "jackpot", "exact-hits:5,1"):
            assert SimTarget.parse(text).describe() == text

    def test_rejects_malformed(self):
        for bad in ("", "at-least-fives:", "exact-hits:3", "exact-hits:a,b",
                    "jackpot:2", "sevens"):
            with pytest.raises(ValidationError):
                SimTarget.parse(bad)

    def test_validate_against_scheme(self):
        with pytest.raises(ValidationError):
            SimTarget.parse("exact-hits:7,1").validate(S49)
        with pytest.raises(ValidationError):
            SimTarget.parse("at-least-fives:0").validate(S49)


class TestConfigValidation:
    def test_unique_portfolio_cannot_exceed_universe(self):
        SimConfig(S10, 210, 10, seed=1)
        with pytest.raises(ValidationError):
            SimConfig(S10, 211, 10, seed=1)

    def test_doubles_portfolio_may_exceed_universe(self):
        SimConfig(S10, 1000, 10, seed=1, unique=False)

    def test_trials_must_be_positive(self):
        with pytest.raises(ValidationError):
            SimConfig(S10, 1, 0, seed=1)

    def test_empty_portfolio_is_allowed_but_negative_is_not(self):
        result = run_simulation(SimConfig(S10, 0, 50, seed=1))
        assert result.hits == 0 and result.frequency == 0
        with pytest.raises(ValidationError):
            SimConfig(S10, -1, 10, seed=1)


class TestWilson:
    def test_zero_hits(self):
        low, high = wilson_interval(0, 100)
        assert low == 0.0
        assert 0 < high < 0.05

    def test_all_hits(self):
        low, high = wilson_interval(100, 100)
        assert high == 1.0
        assert 0.95 < low < 1

    def test_brackets_the_frequency(self):
        for hits, trials in [(1, 10), (5, 50), (500, 1000), (17, 123)]:
            low, high = wilson_interval(hits, trials)
            assert low <= hits / trials <= high

    def test_narrows_with_more_trials(self):
        w1 = wilson_interval(10, 100)
        w2 = wilson_interval(1000, 10000)
        assert (w2[1] - w2[0]) < (w1[1] - w1[0])

    def test_against_direct_formula(self):
        z = 1.959963984540054
        hits, trials = 37, 400
        p = hits / trials
        denom = 1 + z * z / trials
        center = (p + z * z / (2 * trials)) / denom
        margin = z * math.sqrt(p * (1 - p) / trials
                               + z * z / (4 * trials * trials)) / denom
        low, high = wilson_interval(hits, trials)
        assert math.isclose(low, center - margin, rel_tol=1e-12)
        assert math.isclose(high, center + margin, rel_tol=1e-12)


class TestMethodResolution:
    def test_big_scheme_high_tier_uses_rank_set(self):
        cfg = SimConfig(S49, 10, 100, seed=1)
        assert resolve_method(cfg) == "rank-set"

    def test_small_scheme_uses_direct(self):
        cfg = SimConfig(S10, 5, 100, seed=1)
        assert resolve_method(cfg) == "direct"

    def test_exact_hits_target_uses_direct(self):
        cfg = SimConfig(S49, 10, 100, seed=1,
                        target=SimTarget.parse("exact-hits:3,1"))
        assert resolve_method(cfg) == "direct"

    def test_explicit_override(self):
        cfg = SimConfig(S49, 10, 100, seed=1)
        assert resolve_method(cfg, "direct") == "direct"

    def test_rank_set_rejected_for_unsupported_target(self):
        cfg = SimConfig(S49, 10, 100, seed=1,
                        target=SimTarget.parse("exact-hits:3,1"))
        with pytest.raises(ValidationError):
            resolve_method(cfg, "rank-set")


class TestRunSimulation:
    def test_small_scheme_tracks_closed_form(self):
        # One ticket on (10, 4, 4, 3), chance of exactly three hits is
        # C(4,3) C(6,1) / C(10,4) = 24/210. Keep trials modest here; the
        # acceptance suite runs the full-size version.
        exact = pmf_exact_hits(S10, 3, 1, 1).as_fraction()
        assert exact == Fraction(24, 210)
        cfg = SimConfig(S10, 1, 50_000, seed=20260814,
                        target=SimTarget.parse("exact-hits:3,1"))
        result = run_simulation(cfg)
        assert result.trials == 50_000
        assert result.wilson_low <= float(exact) <= result.wilson_high

    def test_direct_and_rank_set_agree_exactly(self):
        # Both paths consume the identical stream, so hit counts match
        # trial for trial, not just statistically.
        cfg = SimConfig(S49, 100, 400, seed=7)
        a = run_simulation(cfg, method="direct")
        b = run_simulation(cfg, method="rank-set")
        assert a.hits == b.hits
        assert a.method == "direct" and b.method == "rank-set"

    def test_worker_split_is_invisible(self):
        cfg = SimConfig(S12, 20, 4000, seed=11)
        one = run_simulation(cfg, workers=1)
        four = run_simulation(cfg, workers=4)
        assert one.hits == four.hits
        assert one.frequency == four.frequency

    def test_same_seed_reproduces(self):
        cfg = SimConfig(S12, 30, 2000, seed=99)
        assert run_simulation(cfg).hits == run_simulation(cfg).hits

    def test_different_seeds_differ(self):
        a = run_simulation(SimConfig(S12, 30, 2000, seed=1))
        b = run_simulation(SimConfig(S12, 30, 2000, seed=2))
        assert a.hits != b.hits

    def test_full_universe_always_wins(self):
        cfg = SimConfig(S10, 210, 50, seed=3)
        result = run_simulation(cfg)
        assert result.hits == 50
        assert result.frequency == 1

    def test_duplicates_allowed_mode_runs(self):
        cfg = SimConfig(S10, 500, 300, seed=5, unique=False,
                        target=SimTarget.parse("jackpot"))
        result = run_simulation(cfg)
        assert 0 <= result.hits <= 300

    def test_jackpot_frequency_tracks_exact_value(self):
        exact = float(prob_at_least_one_high(S12, 40).as_fraction())
        cfg = SimConfig(S12, 40, 20_000, seed=20260814)
        result = run_simulation(cfg)
        assert result.wilson_low <= exact <= result.wilson_high

    def test_result_payload(self):
        cfg = SimConfig(S10, 3, 100, seed=21)
        result = run_simulation(cfg)
        d = result.json_dict()
        assert d["trials"] == 100
        assert d["seed"] == 21
        assert "wilson95" in d
        low, high = d["wilson95"]
        assert low <= high
        assert isinstance(result, SimResult)
        assert result.frequency == Fraction(result.hits, result.trials)
