"""Area Under the Curve for Clustering.

Every unordered object pair is a "sample": its label is 1 when both objects
share a cluster, its score is how alike they are. AUCC is the ROC area of
that labelled sample, i.e. the probability that a random within-cluster pair
is more alike than a random between-cluster pair, ties counted per policy.

All counting is done on one sorted pass over the pairs (O(m log m) for
m = n(n-1)/2), grouped into blocks of exactly equal dissimilarity.
"""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend
from .core import (
    DegeneratePartitionError,
    DissimilarityMatrix,
    InputError,
    PairRanking,
    Partition,
    check_compatible,
)


class TiePolicy(str, enum.Enum):
    DIAGONAL = "diagonal"
    OPTIMISTIC = "optimistic"
    PESSIMISTIC = "pessimistic"


@dataclass(frozen=True)
class PairStatistics:
    """Comparisons between every within-cluster and every between-cluster pair.

    ``s_plus`` counts within pairs strictly more alike than the between pair,
    ``s_minus`` strictly less alike, ``s_zero`` exact ties.
    """

    s_plus: int
    s_minus: int
    s_zero: int
    n_within: int
    n_between: int

    def __post_init__(self):
        if min(self.s_plus, self.s_minus, self.s_zero) < 0:
            raise ValueError("pair counts must be non-negative")
        if self.s_plus + self.s_minus + self.s_zero != self.total:
            raise ValueError("s_plus + s_minus + s_zero must equal n_within * n_between")

    @property
    def total(self) -> int:
        return self.n_within * self.n_between

    def auc_fraction(self, policy=TiePolicy.DIAGONAL) -> Fraction:
        policy = TiePolicy(policy)
        if policy is TiePolicy.DIAGONAL:
            return Fraction(2 * self.s_plus + self.s_zero, 2 * self.total)
        if policy is TiePolicy.OPTIMISTIC:
            return Fraction(self.s_plus + self.s_zero, self.total)
        return Fraction(self.s_plus, self.total)

    def auc(self, policy=TiePolicy.DIAGONAL) -> float:
        return float(self.auc_fraction(policy))

    def gamma_fraction(self) -> Fraction:
        return Fraction(self.s_plus - self.s_minus, self.total)

    def gamma(self) -> float:
        return float(self.gamma_fraction())


def _check_nondegenerate(P: int, N: int) -> None:
    if P == 0:
        raise DegeneratePartitionError("no within-cluster pairs (every cluster is a singleton)")
    if N == 0:
        raise DegeneratePartitionError("no between-cluster pairs (single cluster)")


def _sweep(d: DissimilarityMatrix, p: Partition):
    check_compatible(d, p)
    r = d.ranking
    out = _backend.sweep_pairs(r.pair_i, r.pair_j, p.labels, r.block_ends)
    _check_nondegenerate(out[0], out[1])
    return out


def _sweep_arrays(flags, scores, orientation):
    flags = np.asarray(flags)
    scores = np.asarray(scores, dtype=np.float64)
    if flags.ndim != 1 or flags.shape != scores.shape:
        raise InputError("flags and scores must be 1-d arrays of equal length")
    if flags.size < 2:
        raise InputError("need at least two samples")
    if not np.all(np.isin(flags, (0, 1))):
        raise InputError("flags must be 0 or 1")
    if not np.all(np.isfinite(scores)):
        raise InputError("scores must be finite")
    r = PairRanking.from_scores(scores, orientation)
    sorted_flags = np.ascontiguousarray(flags[r.order], dtype=np.uint8)
    out = _backend.sweep_flags(sorted_flags, r.block_ends)
    _check_nondegenerate(out[0], out[1])
    return r, sorted_flags, out


def _stats(out) -> PairStatistics:
    P, N, s_plus, s_minus, s_zero, _ = out
    return PairStatistics(s_plus, s_minus, s_zero, P, N)


def _midrank_auc(out) -> float:
    # Mann-Whitney form with twice the midrank sum kept as an exact integer:
    # AUC = (R - P(P+1)/2) / (P N)
    P, N, _, _, _, twice_rank = out
    return float(Fraction(twice_rank - P * (P + 1), 2 * P * N))


def _auc(out, policy) -> float:
    policy = TiePolicy(policy)
    if policy is TiePolicy.DIAGONAL:
        return _midrank_auc(out)
    return _stats(out).auc(policy)


def pair_statistics(d: DissimilarityMatrix, p: Partition) -> PairStatistics:
    return _stats(_sweep(d, p))


def aucc(d: DissimilarityMatrix, p: Partition, policy=TiePolicy.DIAGONAL) -> float:
    """AUCC of partition ``p`` under dissimilarities ``d``.

    The diagonal policy (half of each tie to either side) uses the midrank
    rank-sum formula; optimistic and pessimistic allocate all or none of the
    tied mass to the area.
    """
    return _auc(_sweep(d, p), policy)


def aucc_midrank(d: DissimilarityMatrix, p: Partition) -> float:
    return _midrank_auc(_sweep(d, p))


def aucc_from_arrays(flags, scores, orientation: str = "similarity", policy=TiePolicy.DIAGONAL) -> float:
    """AUC of binary ``flags`` ranked by ``scores`` (classifier-style input)."""
    _, _, out = _sweep_arrays(flags, scores, orientation)
    return _auc(out, policy)


def pair_statistics_from_arrays(flags, scores, orientation: str = "similarity") -> PairStatistics:
    _, _, out = _sweep_arrays(flags, scores, orientation)
    return _stats(out)


@dataclass(frozen=True)
class RocCurve:
    """ROC points from most to least alike, one per distinct score.

    ``threshold[i]`` is the score at which point ``i`` is reached: pairs with
    dissimilarity <= threshold (similarity >= threshold) are called "same
    cluster". The origin carries an infinite threshold.
    """

    fpr: np.ndarray
    tpr: np.ndarray
    threshold: np.ndarray
    aucc: float
    orientation: str = "dissimilarity"

    def __len__(self):
        return self.fpr.shape[0]

    @property
    def points(self) -> list[tuple[float, float, float]]:
        return list(zip(self.fpr.tolist(), self.tpr.tolist(), self.threshold.tolist()))

    def trapezoid_area(self) -> float:
        return float(np.sum(np.diff(self.fpr) * (self.tpr[1:] + self.tpr[:-1])) / 2.0)

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["threshold", "fpr", "tpr"])
        for t, x, y in zip(self.threshold, self.fpr, self.tpr):
            w.writerow([repr(float(t)), f"{x:.17g}", f"{y:.17g}"])


def _curve(ranking: PairRanking, sorted_flags, out, orientation) -> RocCurve:
    P, N = out[0], out[1]
    ends = ranking.block_ends
    starts = np.concatenate(([0], ends[:-1]))
    pos = np.add.reduceat(sorted_flags.astype(np.int64), starts)
    neg = (ends - starts) - pos
    tp = np.concatenate(([0], np.cumsum(pos)))
    fp = np.concatenate(([0], np.cumsum(neg)))
    keys = ranking.sorted_keys[ends - 1]
    thresholds = keys if orientation == "dissimilarity" else -keys
    origin = -np.inf if orientation == "dissimilarity" else np.inf
    return RocCurve(
        fpr=fp / N,
        tpr=tp / P,
        threshold=np.concatenate(([origin], thresholds)),
        aucc=_midrank_auc(out),
        orientation=orientation,
    )


def roc_curve(d: DissimilarityMatrix, p: Partition) -> RocCurve:
    out = _sweep(d, p)
    r = d.ranking
    flags = (p.labels[r.pair_i] == p.labels[r.pair_j]).astype(np.uint8)
    return _curve(r, flags, out, d.orientation)


def roc_curve_from_arrays(flags, scores, orientation: str = "similarity") -> RocCurve:
    r, sorted_flags, out = _sweep_arrays(flags, scores, orientation)
    return _curve(r, sorted_flags, out, orientation)

