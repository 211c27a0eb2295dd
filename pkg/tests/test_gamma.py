from fractions import Fraction

import numpy as np
import pytest

from aucc.auc import aucc, pair_statistics
from aucc.core import DegeneratePartitionError, DissimilarityMatrix, InputError, Partition
from aucc.gamma import DEFAULT_CAP, gamma_from_arrays, gamma_naive

from .conftest import random_instance


class TestExamples:
    def test_table_one(self):
        res = gamma_from_arrays([1, 0, 1, 1, 0, 0], [0.75, 0.50, 0.50, 0.50, 0.25, 0.20])
        assert (res.stats.s_plus, res.stats.s_minus, res.stats.s_zero) == (7, 0, 2)
        assert res.fraction == Fraction(7, 9)
        assert res.gamma == 7 / 9

    def test_two_items(self):
        assert gamma_from_arrays([1, 0], [2.0, 1.0]).gamma == 1.0

    def test_toy(self, toy):
        assert gamma_naive(*toy).gamma == pytest.approx(2 * 0.9167 - 1, abs=1e-4)

    def test_no_ties_reduces_to_plain_gamma(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            d, p = random_instance(rng, 12)
            res = gamma_naive(d, p)
            s = res.stats
            assert s.s_zero == 0
            assert res.gamma == (s.s_plus - s.s_minus) / (s.s_plus + s.s_minus)


class TestGuards:
    def test_cap(self):
        X = np.arange(DEFAULT_CAP + 1, dtype=float)
        d = DissimilarityMatrix.from_square(np.abs(X[:, None] - X[None, :]))
        p = Partition(np.arange(d.n) % 2)
        with pytest.raises(InputError, match="aucc"):
            gamma_naive(d, p)

    def test_degenerate_arrays(self):
        with pytest.raises(DegeneratePartitionError):
            gamma_from_arrays([0, 0], [1.0, 2.0])

    def test_bad_orientation(self):
        with pytest.raises(InputError):
            gamma_from_arrays([1, 0], [1.0, 2.0], orientation="up")


class TestEquivalence:
    def test_matches_fast_statistics(self):
        rng = np.random.default_rng(1)
        for trial in range(200):
            d, p = random_instance(rng, int(rng.integers(4, 25)), ties=trial % 2 == 1)
            res = gamma_naive(d, p)
            assert res.stats == pair_statistics(d, p)
            assert aucc(d, p) == pytest.approx((1 + res.gamma) / 2, abs=1e-12)

    def test_orientation_antisymmetry(self):
        rng = np.random.default_rng(2)
        for trial in range(50):
            d, p = random_instance(rng, int(rng.integers(4, 20)), ties=trial % 2 == 1)
            flipped = DissimilarityMatrix(d.n, d.values, "similarity")
            assert gamma_naive(flipped, p).fraction == -gamma_naive(d, p).fraction
