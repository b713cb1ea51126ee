import numpy as np
import pytest

from lottokit import (
    ConstructionError,
    DomainError,
    GreedyConfig,
    ValidationError,
    greedy_cover,
    schonheim_bound,
    verify_covering,
)


class TestExhaustiveGreedy:
    def test_whole_pool_block_needs_one_round(self):
        result = greedy_cover(6, 6, 5)
        assert result.design.block_count == 1
        assert result.rounds == 1
        assert verify_covering(result.design).valid

    def test_pair_cover_of_seven_meets_the_bound(self):
        result = greedy_cover(7, 3, 2)
        assert verify_covering(result.design).valid
        assert result.bound == 7
        assert result.design.block_count == 7
        assert result.gap == 0

    def test_output_always_verifies_and_beats_no_bound(self):
        cases = [(10, 6, 5), (9, 4, 3), (12, 5, 3), (8, 3, 2), (11, 4, 2)]
        for pool, block_size, target_size in cases:
            result = greedy_cover(pool, block_size, target_size)
            report = verify_covering(result.design)
            assert report.valid, (pool, block_size, target_size)
            assert result.design.block_count >= result.bound
            assert result.bound == schonheim_bound(pool, block_size,
                                                   target_size)
            assert result.gap == result.design.block_count - result.bound

    def test_every_round_makes_progress(self):
        result = greedy_cover(11, 5, 4)
        assert result.rounds == result.design.block_count

    def test_deterministic_across_runs(self):
        a = greedy_cover(10, 5, 4)
        b = greedy_cover(10, 5, 4)
        assert np.array_equal(a.design.blocks, b.design.blocks)

    def test_no_duplicate_blocks(self):
        result = greedy_cover(12, 6, 5)
        assert result.design.duplicate_count() == 0

    def test_candidate_cap(self):
        with pytest.raises(Exception) as info:
            greedy_cover(49, 6, 5)
        assert "sampled" in str(info.value)


class TestSampledGreedy:
    def test_output_verifies(self):
        cfg = GreedyConfig(strategy="sampled", sample_count=50, seed=1)
        result = greedy_cover(10, 4, 3, cfg)
        assert verify_covering(result.design).valid
        assert result.strategy == "sampled"

    def test_same_seed_same_design(self):
        cfg = GreedyConfig(strategy="sampled", sample_count=40, seed=9)
        a = greedy_cover(9, 4, 3, cfg)
        b = greedy_cover(9, 4, 3, cfg)
        assert np.array_equal(a.design.blocks, b.design.blocks)

    def test_different_seed_may_differ_but_still_verifies(self):
        designs = []
        for seed in (1, 2, 3):
            cfg = GreedyConfig(strategy="sampled", sample_count=30, seed=seed)
            result = greedy_cover(9, 4, 3, cfg)
            assert verify_covering(result.design).valid
            designs.append(result.design.blocks.tolist())
        assert any(d != designs[0] for d in designs[1:]) or \
            len(designs[0]) > 0

    def test_wider_pool_is_usually_tighter(self):
        narrow = greedy_cover(10, 4, 3,
                              GreedyConfig(strategy="sampled",
                                           sample_count=5, seed=3))
        wide = greedy_cover(10, 4, 3,
                            GreedyConfig(strategy="sampled",
                                         sample_count=400, seed=3))
        assert wide.design.block_count <= narrow.design.block_count + 5


class TestLimitsAndValidation:
    def test_max_blocks_stops_with_partial_design(self):
        # Bound for (13, 4, 3) is 78 and plain greedy lands on 91, so a
        # cap of 85 is legal yet unreachable.
        cfg = GreedyConfig(max_blocks=85)
        with pytest.raises(ConstructionError) as info:
            greedy_cover(13, 4, 3, cfg)
        partial = info.value.partial_design
        assert partial is not None
        assert partial.block_count == 85
        assert not verify_covering(partial).valid

    def test_max_blocks_below_bound_is_rejected_up_front(self):
        cfg = GreedyConfig(max_blocks=3)
        with pytest.raises(DomainError):
            greedy_cover(7, 3, 2, cfg)

    def test_config_validation(self):
        with pytest.raises(ValidationError):
            GreedyConfig(strategy="magic")
        with pytest.raises(ValidationError):
            GreedyConfig(strategy="sampled", sample_count=0)

    def test_parameter_validation(self):
        with pytest.raises(Exception):
            greedy_cover(3, 5, 2)

    def test_progress_callback_fires(self):
        seen = []

        def track(blocks_done, covered, total):
            seen.append((blocks_done, covered, total))

        greedy_cover(9, 3, 2, progress=track, progress_every=5)
        assert seen
        assert all(total == 36 for _, _, total in seen)
        assert [b for b, _, _ in seen] == sorted(b for b, _, _ in seen)


class TestSharedLargeCover:
    def test_25_6_5_cover_verifies_and_reports_gap(self, greedy_25_6_5):
        result = greedy_25_6_5
        assert result.bound == schonheim_bound(25, 6, 5)
        assert result.design.block_count >= result.bound
        report = verify_covering(result.design)
        assert report.valid
        assert report.total_targets == 53130
