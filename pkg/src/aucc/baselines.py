"""Relative validity criteria behind one evaluation interface.

Pair-based criteria read the dissimilarity matrix; centroid-based ones
(SSWC, ASSWC, DB, VRC, PBM, C/sqrt(k)) use Euclidean centroids of the raw
feature matrix. Scores are reported raw; callers flip minimised criteria
when they need "higher is better".
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import auc as _auc
from .core import AuccError, Dataset, DissimilarityMatrix, InputError, Partition, check_compatible

# Denominator offset of the alternative silhouettes, b / (a + eps).
ALT_SILHOUETTE_EPS = 1e-6


class CriterionId(str, enum.Enum):
    AUCC = "aucc"
    GAMMA = "gamma"
    SILHOUETTE_SWC = "silhouette_swc"
    SIMPLIFIED_SILHOUETTE_SSWC = "simplified_silhouette_sswc"
    ALTERNATIVE_SILHOUETTE_ASWC = "alternative_silhouette_aswc"
    ALTERNATIVE_SIMPLIFIED_ASSWC = "alternative_simplified_asswc"
    DAVIES_BOULDIN = "davies_bouldin"
    CALINSKI_HARABASZ_VRC = "calinski_harabasz_vrc"
    DUNN = "dunn"
    PBM = "pbm"
    C_INDEX = "c_index"
    C_SQRT_K = "c_sqrt_k"
    POINT_BISERIAL = "point_biserial"

    @property
    def direction(self) -> str:
        return "min" if self in _MINIMISED else "max"

    @property
    def needs_data(self) -> bool:
        return self in _CENTROID_BASED


_MINIMISED = {CriterionId.DAVIES_BOULDIN, CriterionId.C_INDEX}
_CENTROID_BASED = {
    CriterionId.SIMPLIFIED_SILHOUETTE_SSWC,
    CriterionId.ALTERNATIVE_SIMPLIFIED_ASSWC,
    CriterionId.DAVIES_BOULDIN,
    CriterionId.CALINSKI_HARABASZ_VRC,
    CriterionId.PBM,
    CriterionId.C_SQRT_K,
}
_RANK_BASED = {CriterionId.AUCC, CriterionId.GAMMA}

ALL_CRITERIA = tuple(CriterionId)


class UndefinedCriterion(AuccError):
    """Raised inside a criterion when its formula has a zero denominator."""


@dataclass(frozen=True)
class CriterionScore:
    criterion: CriterionId
    value: float
    direction: str
    error: Optional[str] = None

    @property
    def defined(self) -> bool:
        return self.error is None and math.isfinite(self.value)

    def oriented(self) -> float:
        """Value with minimised criteria negated, so larger is always better."""
        return -self.value if self.direction == "min" else self.value


# ------------------------------------------------------------------ helpers


def _centroids(X, labels, k):
    counts = np.bincount(labels, minlength=k).astype(np.float64)
    sums = np.zeros((k, X.shape[1]))
    np.add.at(sums, labels, X)
    return sums / counts[:, None], counts


def _cluster_sums(D, labels, k):
    # S[i, l] = sum of dissimilarities from object i to members of cluster l
    onehot = np.zeros((labels.size, k))
    onehot[np.arange(labels.size), labels] = 1.0
    return D @ onehot


def _silhouette_from(a, b, singleton, alternative):
    if alternative:
        s = b / (a + ALT_SILHOUETTE_EPS)
    else:
        denom = np.maximum(a, b)
        with np.errstate(invalid="ignore", divide="ignore"):
            s = np.where(denom > 0, (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
    # singletons score 0 by convention
    return float(np.mean(np.where(singleton, 0.0, s)))


def _require_dissimilarity(d: DissimilarityMatrix, cid):
    if d.orientation != "dissimilarity":
        raise InputError(f"{cid.value} needs dissimilarities, not similarities")


# ---------------------------------------------------------------- criteria


def silhouette(d: DissimilarityMatrix, p: Partition, alternative: bool = False) -> float:
    """Rousseeuw silhouette, mean over objects.

    a(i) is the mean dissimilarity to the rest of i's cluster, b(i) the
    smallest mean dissimilarity to another cluster; s(i) = (b - a)/max(a, b),
    or b / (a + eps) for the alternative form.
    """
    labels, k = p.labels, p.k
    S = _cluster_sums(d.square(), labels, k)
    sizes = np.bincount(labels, minlength=k).astype(np.float64)
    idx = np.arange(labels.size)
    own = sizes[labels]
    singleton = own == 1
    a = S[idx, labels] / np.where(singleton, 1.0, own - 1.0)
    means = S / sizes[None, :]
    means[idx, labels] = np.inf
    b = means.min(axis=1)
    return _silhouette_from(a, b, singleton, alternative)


def simplified_silhouette(X: np.ndarray, p: Partition, alternative: bool = False) -> float:
    """Silhouette with centroid distances in place of mean pair distances."""
    labels, k = p.labels, p.k
    C, counts = _centroids(X, labels, k)
    dist = np.sqrt(((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2))
    idx = np.arange(labels.size)
    a = dist[idx, labels]
    other = dist.copy()
    other[idx, labels] = np.inf
    b = other.min(axis=1)
    return _silhouette_from(a, b, counts[labels] == 1, alternative)


def davies_bouldin(X: np.ndarray, p: Partition) -> float:
    """Mean over clusters of max_j (S_i + S_j) / ||c_i - c_j||; S = mean distance to centroid."""
    labels, k = p.labels, p.k
    C, counts = _centroids(X, labels, k)
    spread = np.zeros(k)
    np.add.at(spread, labels, np.sqrt(((X - C[labels]) ** 2).sum(axis=1)))
    spread /= counts
    M = np.sqrt(((C[:, None, :] - C[None, :, :]) ** 2).sum(axis=2))
    off = ~np.eye(k, dtype=bool)
    if np.any(M[off] == 0):
        raise UndefinedCriterion("two clusters share a centroid")
    R = np.where(off, (spread[:, None] + spread[None, :]) / np.where(off, M, 1.0), -np.inf)
    return float(R.max(axis=1).mean())


def calinski_harabasz(X: np.ndarray, p: Partition) -> float:
    """[tr(B)/(k-1)] / [tr(W)/(n-k)]."""
    labels, k, n = p.labels, p.k, p.n
    C, counts = _centroids(X, labels, k)
    grand = X.mean(axis=0)
    between = float((counts * ((C - grand) ** 2).sum(axis=1)).sum())
    within = float(((X - C[labels]) ** 2).sum())
    if within == 0.0:
        raise UndefinedCriterion("zero within-cluster scatter")
    return (between / (k - 1)) / (within / (n - k))


def dunn(d: DissimilarityMatrix, p: Partition) -> float:
    """Smallest between-cluster dissimilarity over largest cluster diameter."""
    i, j = np.triu_indices(d.n, k=1)
    same = p.labels[i] == p.labels[j]
    diameter = d.values[same].max()
    if diameter == 0.0:
        raise UndefinedCriterion("every cluster has zero diameter")
    return float(d.values[~same].min() / diameter)


def pbm(X: np.ndarray, p: Partition) -> float:
    """(E1 * D_k / (k * E_k)) ** 2, with E = summed distances to centroid(s)."""
    labels, k = p.labels, p.k
    C, _ = _centroids(X, labels, k)
    e1 = float(np.sqrt(((X - X.mean(axis=0)) ** 2).sum(axis=1)).sum())
    ek = float(np.sqrt(((X - C[labels]) ** 2).sum(axis=1)).sum())
    if ek == 0.0:
        raise UndefinedCriterion("zero within-cluster scatter")
    dk = float(np.sqrt(((C[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)).max())
    return (e1 * dk / (k * ek)) ** 2


def c_index(d: DissimilarityMatrix, p: Partition) -> float:
    """(S - S_min) / (S_max - S_min) over the P within-cluster pairs (Hubert-Levin)."""
    i, j = np.triu_indices(d.n, k=1)
    same = p.labels[i] == p.labels[j]
    n_within = int(same.sum())
    ordered = d.ranking.sorted_keys
    s = float(d.values[same].sum())
    s_min = float(ordered[:n_within].sum())
    s_max = float(ordered[-n_within:].sum())
    if s_max == s_min:
        raise UndefinedCriterion("all dissimilarities equal")
    return (s - s_min) / (s_max - s_min)


def c_sqrt_k(X: np.ndarray, p: Partition) -> float:
    """Ratkowsky-Lance: mean over features of sqrt(BGSS_j / TSS_j), divided by sqrt(k)."""
    labels, k = p.labels, p.k
    C, counts = _centroids(X, labels, k)
    grand = X.mean(axis=0)
    tss = ((X - grand) ** 2).sum(axis=0)
    bgss = (counts[:, None] * (C - grand) ** 2).sum(axis=0)
    keep = tss > 0
    if not np.any(keep):
        raise UndefinedCriterion("all features are constant")
    return float(np.sqrt(bgss[keep] / tss[keep]).mean() / math.sqrt(k))


def point_biserial(d: DissimilarityMatrix, p: Partition) -> float:
    """Correlation between pair dissimilarity and the between-cluster indicator (Milligan)."""
    i, j = np.triu_indices(d.n, k=1)
    same = p.labels[i] == p.labels[j]
    v = d.values
    sd = float(v.std())
    if sd == 0.0:
        raise UndefinedCriterion("all dissimilarities equal")
    n_w, n_b, m = int(same.sum()), int((~same).sum()), v.size
    return float((v[~same].mean() - v[same].mean()) * math.sqrt(n_w * n_b) / m / sd)


# --------------------------------------------------------------- interface


def _compute(cid: CriterionId, X, d: DissimilarityMatrix, p: Partition) -> float:
    if cid is CriterionId.AUCC:
        return _auc.aucc(d, p)
    if cid is CriterionId.GAMMA:
        return _auc.pair_statistics(d, p).gamma()
    if cid.needs_data:
        if X is None:
            raise InputError(f"{cid.value} needs the feature matrix")
        if cid is CriterionId.SIMPLIFIED_SILHOUETTE_SSWC:
            return simplified_silhouette(X, p)
        if cid is CriterionId.ALTERNATIVE_SIMPLIFIED_ASSWC:
            return simplified_silhouette(X, p, alternative=True)
        if cid is CriterionId.DAVIES_BOULDIN:
            return davies_bouldin(X, p)
        if cid is CriterionId.CALINSKI_HARABASZ_VRC:
            return calinski_harabasz(X, p)
        if cid is CriterionId.PBM:
            return pbm(X, p)
        return c_sqrt_k(X, p)
    _require_dissimilarity(d, cid)
    if cid is CriterionId.SILHOUETTE_SWC:
        return silhouette(d, p)
    if cid is CriterionId.ALTERNATIVE_SILHOUETTE_ASWC:
        return silhouette(d, p, alternative=True)
    if cid is CriterionId.DUNN:
        return dunn(d, p)
    if cid is CriterionId.C_INDEX:
        return c_index(d, p)
    return point_biserial(d, p)


def evaluate(criterion, data: Optional[Dataset], d: DissimilarityMatrix, p: Partition) -> CriterionScore:
    try:
        cid = CriterionId(criterion)
    except ValueError:
        raise InputError(f"unsupported criterion {criterion!r}") from None
    check_compatible(d, p)
    X = None
    if data is not None:
        X = data.X if isinstance(data, Dataset) else np.asarray(data, dtype=np.float64)
        if X.shape[0] != p.n:
            raise InputError("dataset and partition sizes differ")
    try:
        value = float(_compute(cid, X, d, p))
    except UndefinedCriterion as exc:
        return CriterionScore(cid, math.nan, cid.direction, f"undefined: {exc}")
    return CriterionScore(cid, value, cid.direction)


def evaluate_all(data, d: DissimilarityMatrix, p: Partition, criteria=ALL_CRITERIA) -> list[CriterionScore]:
    """Every criterion in order; a failing criterion yields a NaN score with its error."""
    out = []
    for c in criteria:
        cid = CriterionId(c)
        try:
            out.append(evaluate(cid, data, d, p))
        except AuccError as exc:
            out.append(CriterionScore(cid, math.nan, cid.direction, str(exc)))
    return out


def is_rank_based(criterion) -> bool:
    return CriterionId(criterion) in _RANK_BASED
