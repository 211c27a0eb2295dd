"""Baker-Hubert Gamma by explicit enumeration.

This is the slow, obviously-correct reference: every within-cluster pair is
compared against every between-cluster pair, each unordered combination
exactly once. Ties are counted separately so the tie-aware form
``(s_plus - s_minus) / (s_plus + s_minus + s_zero)`` is available.
Nothing here shares code with :mod:`aucc.auc`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .auc import PairStatistics
from .core import (
    DegeneratePartitionError,
    DissimilarityMatrix,
    InputError,
    Partition,
    check_compatible,
)

DEFAULT_CAP = 200


@dataclass(frozen=True)
class GammaResult:
    gamma: float
    stats: PairStatistics

    @property
    def fraction(self) -> Fraction:
        s = self.stats
        return Fraction(s.s_plus - s.s_minus, s.s_plus + s.s_minus + s.s_zero)


def _enumerate(within, between) -> GammaResult:
    within, between = [float(v) for v in within], [float(v) for v in between]
    if not within or not between:
        raise DegeneratePartitionError("need at least one within-cluster and one between-cluster pair")
    s_plus = s_minus = s_zero = 0
    # every within pair against every between pair, smaller value = more alike
    for w in within:
        for b in between:
            if w < b:
                s_plus += 1
            elif w > b:
                s_minus += 1
            else:
                s_zero += 1
    stats = PairStatistics(s_plus, s_minus, s_zero, len(within), len(between))
    # one division, from exact integer counts
    gamma = (s_plus - s_minus) / (s_plus + s_minus + s_zero)
    return GammaResult(gamma, stats)


def gamma_naive(d: DissimilarityMatrix, p: Partition, cap: int = DEFAULT_CAP) -> GammaResult:
    """Gamma of ``p`` by comparing all within/between pair combinations."""
    check_compatible(d, p)
    if d.n > cap:
        raise InputError(
            f"gamma_naive is O(n^4/k) and refuses n={d.n} > cap={cap}; "
            "use aucc.auc.pair_statistics (or raise the cap deliberately)"
        )
    D = d.square()
    # dissimilarity: smaller is more alike; similarity: compare negated values
    sign = 1.0 if d.orientation == "dissimilarity" else -1.0
    labels = p.labels
    within, between = [], []
    for i in range(d.n):
        for j in range(i + 1, d.n):
            (within if labels[i] == labels[j] else between).append(sign * D[i, j])
    return _enumerate(within, between)


def gamma_from_arrays(flags, scores, orientation: str = "similarity") -> GammaResult:
    flags = np.asarray(flags)
    scores = np.asarray(scores, dtype=np.float64)
    if flags.shape != scores.shape or flags.ndim != 1:
        raise InputError("flags and scores must be 1-d arrays of equal length")
    if orientation not in ("similarity", "dissimilarity"):
        raise InputError(f"unknown orientation {orientation!r}")
    keys = scores if orientation == "dissimilarity" else -scores
    return _enumerate(keys[flags == 1], keys[flags == 0])
