import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.metrics import adjusted_rand_score

from aucc.core import InputError, Partition
from aucc.external import GroundTruth, UndefinedCorrelationError, adjusted_rand_index, contingency_table, pearson

labels_st = st.lists(st.integers(0, 4), min_size=3, max_size=30).filter(lambda v: 2 <= len(set(v)) <= len(v) - 1)


def ari_by_pairs(a, b):
    """ARI from the four pair-agreement counts."""
    n = len(a)
    ss = sd = ds = dd = 0
    for i, j in itertools.combinations(range(n), 2):
        same_a, same_b = a[i] == a[j], b[i] == b[j]
        ss += same_a and same_b
        sd += same_a and not same_b
        ds += same_b and not same_a
        dd += not same_a and not same_b
    m = n * (n - 1) / 2
    expected = (ss + sd) * (ss + ds) / m
    top = ((ss + sd) + (ss + ds)) / 2
    return 1.0 if top == expected else (ss - expected) / (top - expected)


class TestARI:
    def test_identical_up_to_relabel(self):
        assert adjusted_rand_index(Partition([0, 0, 1, 1, 2]), GroundTruth(["x", "x", "y", "y", "z"])) == 1.0

    def test_one_object_moved(self):
        g = [0, 0, 0, 0, 1, 1, 1, 1]
        p = [0, 0, 0, 1, 1, 1, 1, 1]
        assert adjusted_rand_index(Partition(p), GroundTruth(g)) == pytest.approx(ari_by_pairs(p, g), abs=1e-15)

    def test_near_singletons_is_finite(self):
        p = Partition([0, 0, 1, 2, 3, 4])
        v = adjusted_rand_index(p, GroundTruth([0, 0, 0, 1, 1, 1]))
        assert -1.0 <= v <= 1.0

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            adjusted_rand_index(Partition([0, 0, 1]), GroundTruth([0, 1]))

    def test_ground_truth_needs_two_labels(self):
        with pytest.raises(InputError):
            GroundTruth([1, 1, 1])

    def test_contingency(self):
        table = contingency_table([0, 0, 1, 1], [0, 1, 1, 1])
        assert table.tolist() == [[1, 1], [0, 2]]

    @settings(max_examples=80)
    @given(labels_st, st.integers(0, 2**32 - 1))
    def test_against_pair_counting_and_sklearn(self, labels, seed):
        other = np.random.default_rng(seed).integers(0, 3, len(labels))
        other[:2] = [0, 1]
        v = adjusted_rand_index(Partition(labels), GroundTruth(other))
        assert v == pytest.approx(ari_by_pairs(labels, list(other)), abs=1e-12)
        assert v == pytest.approx(adjusted_rand_score(other, labels), abs=1e-12)

    @settings(max_examples=50)
    @given(labels_st, st.integers(0, 2**32 - 1))
    def test_symmetric_and_relabel_invariant(self, labels, seed):
        rng = np.random.default_rng(seed)
        other = rng.integers(0, 3, len(labels))
        other[:2] = [0, 1]
        v = adjusted_rand_index(labels, other)
        assert adjusted_rand_index(other, labels) == v
        relabel = rng.permutation(5)[np.asarray(labels)] + 100
        assert adjusted_rand_index(relabel, other) == v
        assert adjusted_rand_index(Partition(labels), GroundTruth(labels)) == 1.0


class TestPearson:
    @pytest.mark.parametrize(
        "x, y, r",
        [([1, 2, 3], [2, 4, 6], 1.0), ([1, 2, 3], [3, 2, 1], -1.0), ([1, 2, 3, 4], [1, 3, 2, 4], 0.8)],
    )
    def test_examples(self, x, y, r):
        assert pearson(x, y) == pytest.approx(r, abs=1e-12)

    def test_constant_is_undefined(self):
        with pytest.raises(UndefinedCorrelationError):
            pearson([1, 1, 1], [1, 2, 3])

    def test_too_short(self):
        with pytest.raises(InputError):
            pearson([1, 2], [2, 1])

    @given(
        st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=30),
        st.floats(0.1, 10),
        st.floats(-100, 100),
    )
    def test_symmetry_and_affine_invariance(self, xs, a, b):
        x = np.array(xs)
        y = np.sin(x) + 0.01 * x
        if np.ptp(x) < 1e-3 or np.ptp(y) < 1e-3:
            return
        r = pearson(x, y)
        assert pearson(y, x) == pytest.approx(r, abs=1e-12)
        assert pearson(a * x + b, y) == pytest.approx(r, abs=1e-9)
