"""External agreement (Adjusted Rand Index) and Pearson correlation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .core import AuccError, InputError, Partition, canonical_labels


class UndefinedCorrelationError(AuccError, ValueError):
    """Pearson r is undefined because one input is constant."""


@dataclass(frozen=True, eq=False)
class GroundTruth:
    labels: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.labels)
        if raw.ndim != 1:
            raise InputError("ground truth must be a 1-d label array")
        dense = canonical_labels(raw)
        if dense.size == 0 or dense.max() < 1:
            raise InputError("ground truth needs at least 2 distinct labels")
        object.__setattr__(self, "labels", dense)

    @property
    def n(self) -> int:
        return self.labels.shape[0]


def _labels(x) -> np.ndarray:
    if isinstance(x, (Partition, GroundTruth)):
        return x.labels
    return canonical_labels(x)


def contingency_table(a, b) -> np.ndarray:
    a, b = _labels(a), _labels(b)
    if a.shape != b.shape:
        raise InputError(f"label arrays differ in length ({a.size} vs {b.size})")
    table = np.zeros((a.max() + 1, b.max() + 1), dtype=np.int64)
    np.add.at(table, (a, b), 1)
    return table


def adjusted_rand_index(p, g) -> float:
    """Hubert-Arabie ARI from exact pair counts, one final division."""
    table = contingency_table(p, g)
    n = int(table.sum())
    sum_cells = sum(comb(int(v), 2) for v in table.ravel())
    sum_rows = sum(comb(int(v), 2) for v in table.sum(axis=1))
    sum_cols = sum(comb(int(v), 2) for v in table.sum(axis=0))
    total = comb(n, 2)
    # expected index under the permutation model, kept rational
    expected = Fraction(sum_rows * sum_cols, total)
    max_index = Fraction(sum_rows + sum_cols, 2)
    if max_index == expected:
        # both labelings trivial (one cluster or all singletons on both sides)
        return 1.0
    return float((sum_cells - expected) / (max_index - expected))


def pearson(x, y) -> float:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise InputError("pearson needs two 1-d arrays of equal length")
    if x.size < 3:
        raise InputError("pearson needs at least 3 observations")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InputError("pearson inputs must be finite")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise UndefinedCorrelationError("correlation undefined for a constant input")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    r = float(np.dot(xc, yc)) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))
