import io
import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aucc import _backend
from aucc.auc import (
    PairStatistics,
    TiePolicy,
    aucc,
    aucc_from_arrays,
    aucc_midrank,
    pair_statistics,
    pair_statistics_from_arrays,
    roc_curve,
    roc_curve_from_arrays,
)
from aucc.core import DegeneratePartitionError, DissimilarityMatrix, InputError, Partition
from aucc.gamma import gamma_from_arrays, gamma_naive

from .conftest import random_instance

TABLE_FLAGS = [1, 0, 1, 1, 0, 0]
TABLE_SCORES = [0.75, 0.50, 0.50, 0.50, 0.25, 0.20]


def permutation_oracle(flags, scores):
    """Mean step-curve area over every ordering of the tied blocks (similarity scores).

    Within a block holding ``a`` positives among ``t`` items, every placement
    of the positives is equally likely, so enumerating position subsets is
    the same as enumerating all ``t!`` orderings.
    """
    flags, scores = np.asarray(flags), np.asarray(scores)
    blocks = []
    for value in sorted(set(scores.tolist()), reverse=True):
        members = flags[scores == value]
        blocks.append((len(members), int(members.sum())))
    choices = [list(itertools.combinations(range(t), a)) for t, a in blocks]
    P, N = int(flags.sum()), int((1 - flags).sum())
    total, count = Fraction(0), 0
    for combo in itertools.product(*choices):
        seq = []
        for (t, _), positions in zip(blocks, combo):
            block = [0] * t
            for i in positions:
                block[i] = 1
            seq.extend(block)
        # step curve area = fraction of (pos, neg) pairs with pos strictly first
        negs_seen, correct = 0, 0
        for f in reversed(seq):
            if f:
                correct += negs_seen
            else:
                negs_seen += 1
        total += Fraction(correct, P * N)
        count += 1
    return total / count


class TestToyExample:
    def test_value(self, toy, backend):
        d, p = toy
        assert aucc(d, p) == pytest.approx(0.9167, abs=5e-5)
        assert aucc(d, p) == 99 / 108

    def test_counts(self, toy, backend):
        s = pair_statistics(*toy)
        assert (s.n_within, s.n_between) == (9, 12)
        assert (s.s_plus, s.s_minus, s.s_zero) == (99, 9, 0)

    def test_roc_area(self, toy, backend):
        curve = roc_curve(*toy)
        assert curve.trapezoid_area() == pytest.approx(aucc(*toy), abs=1e-12)


class TestTableOneTies:
    def test_counts(self, backend):
        s = pair_statistics_from_arrays(TABLE_FLAGS, TABLE_SCORES)
        assert (s.s_plus, s.s_minus, s.s_zero) == (7, 0, 2)
        assert s.gamma_fraction() == Fraction(7, 9)

    def test_policies(self, backend):
        assert aucc_from_arrays(TABLE_FLAGS, TABLE_SCORES) == pytest.approx(8 / 9, abs=1e-12)
        assert aucc_from_arrays(TABLE_FLAGS, TABLE_SCORES, policy="optimistic") == 1.0
        assert aucc_from_arrays(TABLE_FLAGS, TABLE_SCORES, policy="pessimistic") == pytest.approx(7 / 9, abs=1e-15)

    def test_permutation_oracle(self):
        assert permutation_oracle(TABLE_FLAGS, TABLE_SCORES) == Fraction(8, 9)

    def test_tied_block_extremes(self):
        # best and worst orderings of the tied block give the policy bounds
        s = pair_statistics_from_arrays(TABLE_FLAGS, TABLE_SCORES)
        assert s.auc_fraction("optimistic") == Fraction(9, 9)
        assert s.auc_fraction("pessimistic") == Fraction(7, 9)


class TestTrivial:
    def test_two_items(self, backend):
        assert aucc_from_arrays([1, 0], [0.9, 0.1]) == 1.0
        assert aucc_from_arrays([1, 0], [0.9, 0.1], orientation="dissimilarity") == 0.0

    def test_single_flag_value_is_degenerate(self):
        with pytest.raises(DegeneratePartitionError):
            aucc_from_arrays([1, 1, 1], [0.1, 0.2, 0.3])

    def test_bad_arrays(self):
        with pytest.raises(InputError):
            aucc_from_arrays([1, 0], [0.1])
        with pytest.raises(InputError):
            aucc_from_arrays([1, 2], [0.1, 0.3])
        with pytest.raises(InputError):
            aucc_from_arrays([1, 0], [0.1, np.nan])

    def test_perfect_separation(self, backend):
        X = np.array([0.0, 0.1, 0.2, 10.0, 10.1, 10.3])[:, None]
        D = np.abs(X - X.T)
        d, p = DissimilarityMatrix.from_square(D), Partition([0, 0, 0, 1, 1, 1])
        s = pair_statistics(d, p)
        assert (s.s_plus, s.s_minus, s.s_zero) == (s.total, 0, 0)
        curve = roc_curve(d, p)
        assert (0.0, 1.0) in [(x, y) for x, y, _ in curve.points]
        assert curve.trapezoid_area() == 1.0

    def test_statistics_validate(self):
        with pytest.raises(ValueError):
            PairStatistics(1, 1, 1, 2, 2)


class TestPermutationOracle:
    def test_random_tied_arrays(self, backend):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            m = int(rng.integers(2, 11))
            flags = rng.integers(0, 2, m)
            flags[:2] = [1, 0]
            scores = rng.integers(0, 4, m) / 4.0
            expected = permutation_oracle(flags, scores)
            assert aucc_from_arrays(flags, scores) == pytest.approx(float(expected), abs=1e-12)


class TestAgainstOracle:
    def test_small_random_datasets(self, backend):
        rng = np.random.default_rng(3)
        for trial in range(50):
            d, p = random_instance(rng, int(rng.integers(4, 13)), ties=trial % 2 == 0)
            assert pair_statistics(d, p) == gamma_naive(d, p).stats

    def test_backends_agree(self):
        rng = np.random.default_rng(11)
        for trial in range(30):
            d, p = random_instance(rng, int(rng.integers(5, 40)), ties=trial % 2 == 0)
            results = []
            for name in _backend.available():
                previous = _backend.use(name)
                try:
                    results.append((pair_statistics(d, p), aucc(d, p), roc_curve(d, p).tpr.tolist()))
                finally:
                    _backend.use(previous)
            assert all(r == results[0] for r in results)


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.booleans())
    def test_midrank_matches_statistics(self, seed, ties):
        rng = np.random.default_rng(seed)
        d, p = random_instance(rng, int(rng.integers(4, 30)), ties=ties)
        assert aucc_midrank(d, p) == pytest.approx(pair_statistics(d, p).auc(), abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from(["cube", "exp", "affine"]))
    def test_monotone_transform_invariance(self, seed, transform):
        rng = np.random.default_rng(seed)
        d, p = random_instance(rng, int(rng.integers(4, 30)), ties=bool(seed % 2))
        f = {"cube": lambda v: v**3, "exp": lambda v: np.expm1(v), "affine": lambda v: 3.0 * v + 1.0}[transform]
        moved = d.with_values(f(d.values))
        assert np.array_equal(np.argsort(moved.values, kind="stable"), np.argsort(d.values, kind="stable"))
        assert pair_statistics(moved, p) == pair_statistics(d, p)
        assert aucc(moved, p) == aucc(d, p)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_relabel_invariance(self, seed):
        rng = np.random.default_rng(seed)
        d, p = random_instance(rng, int(rng.integers(4, 30)))
        perm = rng.permutation(p.k) + 5
        assert aucc(d, Partition(perm[p.labels])) == aucc(d, p)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.booleans())
    def test_policy_ordering(self, seed, ties):
        rng = np.random.default_rng(seed)
        d, p = random_instance(rng, int(rng.integers(4, 30)), ties=ties)
        lo, mid, hi = (aucc(d, p, t) for t in ("pessimistic", "diagonal", "optimistic"))
        assert lo <= mid <= hi
        zero = pair_statistics(d, p).s_zero == 0
        assert (lo == hi) == zero

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.booleans())
    def test_complement_symmetry(self, seed, ties):
        rng = np.random.default_rng(seed)
        d, p = random_instance(rng, int(rng.integers(4, 30)), ties=ties)
        flipped = DissimilarityMatrix(d.n, d.values, "similarity")
        s, t = pair_statistics(d, p), pair_statistics(flipped, p)
        assert (t.s_plus, t.s_minus, t.s_zero) == (s.s_minus, s.s_plus, s.s_zero)
        assert aucc(flipped, p) == pytest.approx(1 - aucc(d, p), abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_input_order_independence(self, seed):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(2, 40))
        flags = rng.integers(0, 2, m)
        flags[:2] = [1, 0]
        scores = rng.integers(0, 5, m).astype(float)
        perm = rng.permutation(m)
        assert pair_statistics_from_arrays(flags, scores) == pair_statistics_from_arrays(flags[perm], scores[perm])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_aucc_equals_rescaled_gamma(self, seed):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(2, 40))
        flags = rng.integers(0, 2, m)
        flags[:2] = [1, 0]
        scores = rng.integers(0, 5, m).astype(float)
        assert aucc_from_arrays(flags, scores) == pytest.approx((1 + gamma_from_arrays(flags, scores).gamma) / 2, abs=1e-12)


class TestRocCurve:
    def test_random_n100_area(self, backend):
        rng = np.random.default_rng(5)
        d, p = random_instance(rng, 100, k=4)
        curve = roc_curve(d, p)
        assert curve.trapezoid_area() == pytest.approx(aucc(d, p), abs=1e-12)
        assert curve.aucc == aucc(d, p)

    def test_shape(self, backend):
        rng = np.random.default_rng(6)
        d, p = random_instance(rng, 30, ties=True)
        curve = roc_curve(d, p)
        assert curve.points[0][:2] == (0.0, 0.0)
        assert curve.points[-1][:2] == (1.0, 1.0)
        assert np.all(np.diff(curve.fpr) >= 0) and np.all(np.diff(curve.tpr) >= 0)
        # one point per distinct threshold, plus the origin
        assert len(curve) == len(np.unique(d.values)) + 1
        assert np.all(np.diff(curve.threshold) > 0)

    def test_tied_block_is_one_segment(self):
        curve = roc_curve_from_arrays(TABLE_FLAGS, TABLE_SCORES)
        fpr = [Fraction(x).limit_denominator(100) for x in curve.fpr]
        tpr = [Fraction(y).limit_denominator(100) for y in curve.tpr]
        assert list(zip(fpr, tpr)) == [(0, 0), (0, Fraction(1, 3)), (Fraction(1, 3), 1), (Fraction(2, 3), 1), (1, 1)]
        assert curve.trapezoid_area() == pytest.approx(8 / 9, abs=1e-12)
        assert list(curve.threshold) == [np.inf, 0.75, 0.5, 0.25, 0.2]

    def test_csv(self):
        buf = io.StringIO()
        roc_curve_from_arrays(TABLE_FLAGS, TABLE_SCORES).write_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "threshold,fpr,tpr"
        assert len(lines) == 6
        assert lines[3].split(",")[1].startswith("0.33333333333333")


@pytest.mark.parametrize("policy", list(TiePolicy))
def test_policy_accepts_strings(policy):
    assert aucc_from_arrays(TABLE_FLAGS, TABLE_SCORES, policy=policy.value) == aucc_from_arrays(
        TABLE_FLAGS, TABLE_SCORES, policy=policy
    )
