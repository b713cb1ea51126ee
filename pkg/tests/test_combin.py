import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lottokit import DomainError, ValidationError, binomial, rank_colex, \
    ratio_no_overlap, unrank_colex
from lottokit.combin import binomial_table, rank_rows, validate_subset

import numpy as np

from naive_oracles import colex_sorted_subsets, naive_binomial


class TestBinomial:
    def test_pascal_recurrence_up_to_60(self):
        for n in range(1, 61):
            for k in range(1, n + 1):
                assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)

    def test_symmetry(self):
        for n in range(0, 40):
            for k in range(0, n + 1):
                assert binomial(n, k) == binomial(n, n - k)

    def test_matches_naive_oracle(self):
        for n in range(0, 25):
            for k in range(0, 30):
                assert binomial(n, k) == naive_binomial(n, k)

    def test_k_above_n_is_zero(self):
        assert binomial(5, 9) == 0
        assert binomial(0, 1) == 0

    def test_negative_arguments_rejected(self):
        with pytest.raises(DomainError):
            binomial(-1, 2)
        with pytest.raises(DomainError):
            binomial(3, -2)

    def test_size_guard(self):
        with pytest.raises(DomainError):
            binomial(10 ** 9, 2)


class TestColexRank:
    def test_contract_examples(self):
        assert rank_colex((1, 2, 3, 4, 5, 6)) == 0
        assert rank_colex((44, 45, 46, 47, 48, 49)) == 13_983_815
        two_of_four = [((1, 2), 0), ((1, 3), 1), ((2, 3), 2),
                       ((1, 4), 3), ((2, 4), 4), ((3, 4), 5)]
        for subset, rank in two_of_four:
            assert rank_colex(subset) == rank
            assert unrank_colex(rank, 2) == subset

    def test_unrank_examples(self):
        assert unrank_colex(0, 6) == (1, 2, 3, 4, 5, 6)
        assert unrank_colex(4, 2) == (2, 4)
        assert unrank_colex(13_983_815, 6) == (44, 45, 46, 47, 48, 49)

    @pytest.mark.parametrize("pool,size", [(8, 3), (10, 4), (12, 6), (12, 1), (9, 9)])
    def test_exhaustive_round_trip_matches_colex_enumeration(self, pool, size):
        subsets = colex_sorted_subsets(pool, size)
        for rank, subset in enumerate(subsets):
            assert rank_colex(subset) == rank
            assert unrank_colex(rank, size, pool=pool) == subset

    def test_rank_is_pool_independent(self):
        assert rank_colex((2, 5, 7)) == rank_colex((2, 5, 7), pool=49)

    @given(st.integers(1, 12), st.data())
    @settings(max_examples=60)
    def test_colex_order_is_monotone_in_rank(self, pool, data):
        size = data.draw(st.integers(1, min(6, pool)))
        total = math.comb(pool, size)
        rank = data.draw(st.integers(0, total - 2)) if total > 1 else 0
        if total == 1:
            return
        a = unrank_colex(rank, size)
        b = unrank_colex(rank + 1, size)
        assert tuple(reversed(a)) < tuple(reversed(b))

    def test_validation(self):
        with pytest.raises(ValidationError):
            rank_colex((3, 2, 1))
        with pytest.raises(ValidationError):
            rank_colex((0, 1))
        with pytest.raises(ValidationError):
            rank_colex((1, 2, 60), pool=49)
        with pytest.raises(ValidationError):
            unrank_colex(-1, 3)
        with pytest.raises(ValidationError):
            unrank_colex(6, 2, pool=4)     # only ranks 0..5 exist
        with pytest.raises(ValidationError):
            unrank_colex(0, 0)
        with pytest.raises(ValidationError):
            validate_subset((1, 2, 3), size=4)


class TestRatioNoOverlap:
    def test_no_marked_items_is_certain(self):
        assert ratio_no_overlap(100, 0, 10) == 1

    def test_contract_example(self):
        assert ratio_no_overlap(10, 2, 3) == Fraction(7, 15)

    def test_exhaustive_against_direct_binomials(self):
        for population in range(0, 31):
            for excluded in range(0, population + 1):
                for draws in range(0, population + 1):
                    expected = Fraction(
                        naive_binomial(population - excluded, draws),
                        naive_binomial(population, draws))
                    assert ratio_no_overlap(population, excluded, draws) == expected

    def test_overfull_is_exact_zero(self):
        assert ratio_no_overlap(10, 8, 5) == 0

    def test_draws_beyond_population_is_domain_error(self):
        with pytest.raises(DomainError):
            ratio_no_overlap(10, 2, 11)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            ratio_no_overlap(-1, 0, 0)


class TestVectorizedRanks:
    def test_table_matches_binomial(self):
        table = binomial_table(49, 6)
        for x in range(50):
            for j in range(7):
                assert table[x, j] == binomial(x, j)

    def test_rank_rows_matches_scalar(self):
        rows = np.array([[1, 2, 3, 4, 5, 6], [44, 45, 46, 47, 48, 49],
                         [2, 14, 25, 33, 41, 49]], dtype=np.int64)
        table = binomial_table(49, 6)
        expected = [rank_colex(tuple(int(v) for v in r)) for r in rows]
        assert rank_rows(rows, table).tolist() == expected
