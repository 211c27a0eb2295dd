"""Shared domain types: datasets, dissimilarity matrices, partitions.

Pairs of objects are always indexed in row-major upper-triangle order, the
same layout :func:`scipy.spatial.distance.pdist` produces.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist

METRICS = ("euclidean", "sqeuclidean", "manhattan")
_SCIPY_METRIC = {"euclidean": "euclidean", "sqeuclidean": "sqeuclidean", "manhattan": "cityblock"}
ORIENTATIONS = ("dissimilarity", "similarity")


class AuccError(Exception):
    """Base class for errors raised by this package."""


class InputError(AuccError, ValueError):
    """Malformed or inconsistent input data."""


class DegeneratePartitionError(AuccError, ValueError):
    """A partition with no within-cluster or no between-cluster pairs."""


def n_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the unordered pair ``(i, j)``, ``i < j``, in condensed order."""
    if not 0 <= i < j < n:
        raise ValueError(f"pair_index needs 0 <= i < j < n, got i={i}, j={j}, n={n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row and column of every pair, in condensed order."""
    i, j = np.triu_indices(n, k=1)
    return i.astype(np.int64), j.astype(np.int64)


@dataclass(frozen=True, eq=False)
class Dataset:
    X: np.ndarray
    ids: Optional[tuple] = None

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64)
        if X.ndim != 2:
            raise InputError(f"dataset must be a 2-d array, got shape {X.shape}")
        if X.shape[0] < 2:
            raise InputError("dataset needs at least 2 objects")
        if not np.all(np.isfinite(X)):
            raise InputError("dataset contains NaN or infinite feature values")
        if self.ids is not None and len(self.ids) != X.shape[0]:
            raise InputError("ids length does not match number of objects")
        X.setflags(write=False)
        object.__setattr__(self, "X", X)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def standardized(self) -> "Dataset":
        """Z-score each feature; constant features are centred only."""
        sd = self.X.std(axis=0)
        sd[sd == 0] = 1.0
        return Dataset((self.X - self.X.mean(axis=0)) / sd, self.ids)


@dataclass(frozen=True, eq=False)
class DissimilarityMatrix:
    """Condensed pairwise (dis)similarities over ``n`` objects.

    ``orientation="similarity"`` marks fixtures whose values grow with
    resemblance; ranking then runs in the opposite direction and the
    values themselves are left untouched.
    """

    n: int
    values: np.ndarray
    orientation: str = "dissimilarity"
    metric: Optional[str] = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64).ravel()
        if self.n < 2:
            raise InputError("need at least 2 objects")
        if v.shape[0] != n_pairs(self.n):
            raise InputError(f"expected {n_pairs(self.n)} condensed entries for n={self.n}, got {v.shape[0]}")
        if self.orientation not in ORIENTATIONS:
            raise InputError(f"orientation must be one of {ORIENTATIONS}")
        if not np.all(np.isfinite(v)):
            raise InputError("dissimilarities must be finite")
        if self.orientation == "dissimilarity" and np.any(v < 0):
            raise InputError("dissimilarities must be non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_square(cls, D, orientation: str = "dissimilarity", metric=None) -> "DissimilarityMatrix":
        D = np.asarray(D, dtype=np.float64)
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise InputError(f"matrix must be square, got shape {D.shape}")
        if not np.array_equal(D, D.T):
            raise InputError("matrix is not exactly symmetric")
        diag = np.diag(D)
        if orientation == "dissimilarity" and np.any(diag != 0):
            raise InputError("dissimilarity diagonal must be exactly 0")
        if orientation == "similarity" and np.any(diag != diag[0]):
            raise InputError("similarity diagonal must be constant")
        i, j = np.triu_indices(D.shape[0], k=1)
        return cls(D.shape[0], D[i, j], orientation, metric)

    def square(self) -> np.ndarray:
        """Full ``n x n`` matrix (zero diagonal for dissimilarities)."""
        D = np.zeros((self.n, self.n))
        i, j = np.triu_indices(self.n, k=1)
        D[i, j] = self.values
        D[j, i] = self.values
        return D

    def __getitem__(self, ij) -> float:
        i, j = ij
        if i == j:
            return 0.0
        if i > j:
            i, j = j, i
        return float(self.values[pair_index(i, j, self.n)])

    @cached_property
    def ranking(self) -> "PairRanking":
        return PairRanking.from_scores(self.values, self.orientation, n=self.n)

    def with_values(self, values) -> "DissimilarityMatrix":
        return DissimilarityMatrix(self.n, values, self.orientation, self.metric)


@dataclass(frozen=True, eq=False)
class PairRanking:
    """Pairs sorted from most to least alike, with tie-block boundaries.

    Built once per matrix and shared by every partition scored against it.
    ``order`` indexes the condensed pair list; ``block_ends`` are the
    exclusive end offsets of runs of exactly equal values.
    """

    order: np.ndarray
    sorted_keys: np.ndarray
    block_ends: np.ndarray
    n: Optional[int] = None
    pair_i: Optional[np.ndarray] = field(default=None, repr=False)
    pair_j: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def from_scores(cls, scores, orientation: str = "dissimilarity", n: Optional[int] = None) -> "PairRanking":
        scores = np.asarray(scores, dtype=np.float64)
        if orientation not in ORIENTATIONS:
            raise InputError(f"orientation must be one of {ORIENTATIONS}")
        # negation is exact in IEEE arithmetic, so ties are preserved bit-for-bit
        keys = scores if orientation == "dissimilarity" else -scores
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
        if sorted_keys.size:
            breaks = np.flatnonzero(sorted_keys[1:] != sorted_keys[:-1]) + 1
            block_ends = np.append(breaks, sorted_keys.size).astype(np.int64)
        else:
            block_ends = np.zeros(0, dtype=np.int64)
        pi = pj = None
        if n is not None:
            i, j = pair_arrays(n)
            pi = np.ascontiguousarray(i[order])
            pj = np.ascontiguousarray(j[order])
        return cls(order, sorted_keys, block_ends, n, pi, pj)

    @property
    def m(self) -> int:
        return self.order.shape[0]


def canonical_labels(raw) -> np.ndarray:
    """Relabel to ``0..k-1`` in order of first appearance."""
    _, first, inverse = np.unique(np.asarray(raw), return_index=True, return_inverse=True)
    remap = np.empty(first.size, dtype=np.int64)
    remap[np.argsort(first, kind="stable")] = np.arange(first.size)
    return remap[inverse.ravel()]


@dataclass(frozen=True, eq=False)
class Partition:
    """Dense cluster labels ``0..k-1``.

    Arbitrary labels are compacted on construction, numbered by order of
    first appearance, so any relabeling of the same grouping yields the
    identical label array. Evaluation requires ``2 <= k <= n - 1``.
    """

    labels: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.labels)
        if raw.ndim != 1 or raw.size < 3:
            raise InputError("a partition needs a 1-d label array over at least 3 objects")
        dense = canonical_labels(raw)
        k = int(dense.max()) + 1
        if k < 2:
            raise DegeneratePartitionError("partition has a single cluster: no between-cluster pairs")
        if k > raw.size - 1:
            raise DegeneratePartitionError("partition is all singletons: no within-cluster pairs")
        dense.setflags(write=False)
        object.__setattr__(self, "labels", dense)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def k(self) -> int:
        return int(self.labels.max()) + 1

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def __eq__(self, other):
        return isinstance(other, Partition) and np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash(self.labels.tobytes())


def pairwise(p: Partition) -> np.ndarray:
    """Same-cluster flag (1) or different-cluster flag (0) for every pair."""
    i, j = pair_arrays(p.n)
    return (p.labels[i] == p.labels[j]).astype(np.uint8)


def compute_dissimilarities(data: Dataset, metric: str = "euclidean") -> DissimilarityMatrix:
    if metric not in METRICS:
        raise InputError(f"unknown metric {metric!r}; choose from {METRICS}")
    if not isinstance(data, Dataset):
        data = Dataset(data)
    return DissimilarityMatrix(data.n, pdist(data.X, _SCIPY_METRIC[metric]), metric=metric)


def check_compatible(d: DissimilarityMatrix, p: Partition) -> None:
    if d.n != p.n:
        raise InputError(f"matrix covers {d.n} objects but partition labels {p.n}")


# --------------------------------------------------------------------- I/O


def _is_number(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def read_dataset_csv(path, label_column: Optional[bool] = None) -> tuple[Dataset, Optional[np.ndarray]]:
    """Read one object per row; returns the dataset and trailing labels if any.

    A header row is detected when its first field is not numeric. With
    ``label_column=None`` a column named ``label`` (or ``class``) is treated
    as ground truth.
    """
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise InputError(f"{path}: empty file")
    header = None
    if not all(_is_number(c) for c in rows[0]):
        header, rows = [c.strip() for c in rows[0]], rows[1:]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError(f"{path}: rows have differing numbers of columns")
    if label_column is None:
        label_column = header is not None and header[-1].lower() in ("label", "class")
    labels = None
    if label_column:
        labels = np.array([r[-1].strip() for r in rows])
        rows = [r[:-1] for r in rows]
        try:
            labels = labels.astype(np.int64)
        except ValueError:
            pass
    try:
        X = np.array([[float(c) for c in r] for r in rows], dtype=np.float64)
    except ValueError as exc:
        raise InputError(f"{path}: non-numeric feature value ({exc})") from None
    return Dataset(X), labels


def read_labels(path) -> np.ndarray:
    """One label per line; integer labels are parsed as integers."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    arr = np.array(lines)
    try:
        return arr.astype(np.int64)
    except ValueError:
        return arr


def read_partition(path) -> Partition:
    labels = read_labels(path)
    if labels.dtype.kind not in "iu":
        raise InputError(f"{path}: partition labels must be integers")
    return Partition(labels)


def write_labels(path, labels: Sequence) -> None:
    Path(path).write_text("".join(f"{lab}\n" for lab in labels))


def read_dissimilarity_csv(path, orientation: str = "dissimilarity") -> DissimilarityMatrix:
    """Full ``n x n`` matrix, optionally with a header row; symmetry must be exact."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if rows and not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    try:
        D = np.array([[float(c) for c in r] for r in rows], dtype=np.float64)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    return DissimilarityMatrix.from_square(D, orientation)
