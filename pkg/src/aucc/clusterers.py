"""Candidate-partition generators: k-means and Lance-Williams agglomeration."""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import Dataset, DissimilarityMatrix, InputError, Partition


# ------------------------------------------------------------------ k-means


@dataclass(frozen=True, eq=False)
class KMeansRun:
    labels: np.ndarray
    centers: np.ndarray
    mse: float
    n_iter: int
    history: tuple  # MSE after every centroid update


def _sq_dist(X, C):
    return ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)


def _update(X, labels, k):
    counts = np.bincount(labels, minlength=k)
    sums = np.zeros((k, X.shape[1]))
    np.add.at(sums, labels, X)
    with np.errstate(invalid="ignore"):
        return sums / counts[:, None], counts


def _repair_empty(X, labels, k):
    """Give every empty cluster the point farthest from the centroid of the largest cluster."""
    C, counts = _update(X, labels, k)
    for e in np.flatnonzero(counts == 0):
        big = int(np.argmax(counts))
        members = np.flatnonzero(labels == big)
        far = members[int(np.argmax(((X[members] - C[big]) ** 2).sum(axis=1)))]
        labels[far] = e
        C, counts = _update(X, labels, k)
    return C


def lloyd(X: np.ndarray, centers: np.ndarray, max_iter: int = 300) -> KMeansRun:
    """Lloyd iterations from ``centers`` until the assignment stops changing."""
    k = centers.shape[0]
    labels = np.argmin(_sq_dist(X, centers), axis=1)
    C = _repair_empty(X, labels, k)
    history = [float(((X - C[labels]) ** 2).sum() / X.shape[0])]
    n_iter = 1
    while n_iter < max_iter:
        new = np.argmin(_sq_dist(X, C), axis=1)
        if np.array_equal(new, labels):
            break
        labels = new
        C = _repair_empty(X, labels, k)
        history.append(float(((X - C[labels]) ** 2).sum() / X.shape[0]))
        n_iter += 1
    return KMeansRun(labels, C, history[-1], n_iter, tuple(history))


def kmeans_runs(data, k: int, n_init: int = 100, seed=0, max_iter: int = 300) -> list[KMeansRun]:
    X = data.X if isinstance(data, Dataset) else np.asarray(data, dtype=np.float64)
    n = X.shape[0]
    if not 2 <= k <= n - 1:
        raise InputError(f"k-means needs 2 <= k <= n-1, got k={k}, n={n}")
    if n_init < 1:
        raise InputError("n_init must be at least 1")
    distinct = np.unique(X, axis=0)
    if distinct.shape[0] < k:
        raise InputError(f"only {distinct.shape[0]} distinct points for k={k}")
    rng = np.random.default_rng(seed)
    runs = []
    for _ in range(n_init):
        # Forgy seeding over distinct points
        start = distinct[rng.choice(distinct.shape[0], size=k, replace=False)]
        runs.append(lloyd(X, start, max_iter))
    return runs


def kmeans(data, k: int, n_init: int = 100, seed=0, max_iter: int = 300) -> Partition:
    """Best-MSE partition over ``n_init`` Forgy-seeded Lloyd runs (ties: earliest run)."""
    runs = kmeans_runs(data, k, n_init, seed, max_iter)
    best = min(range(len(runs)), key=lambda r: (runs[r].mse, r))
    return Partition(runs[best].labels)


# ------------------------------------------------------- hierarchical (HCA)


class LinkageKind(str, enum.Enum):
    SINGLE = "single"
    COMPLETE = "complete"
    AVERAGE = "average"
    WARD = "ward"


_METHOD_CODE = {LinkageKind.SINGLE: 0, LinkageKind.COMPLETE: 1, LinkageKind.AVERAGE: 2, LinkageKind.WARD: 3}


@dataclass(frozen=True, eq=False)
class Dendrogram:
    """Merge list in scipy's linkage layout: ``(left, right, height, size)``.

    Leaves are nodes ``0..n-1``; merge ``t`` creates node ``n + t``.
    """

    merges: np.ndarray
    n: int
    kind: LinkageKind

    @property
    def heights(self) -> np.ndarray:
        return self.merges[:, 2]

    def cut(self, k: int) -> Partition:
        return cut(self, k)

    def write_csv(self, fh) -> None:
        fh.write("left,right,height,size\n")
        for left, right, h, s in self.merges:
            fh.write(f"{int(left)},{int(right)},{h:.17g},{int(s)}\n")


def agglomerate(d: DissimilarityMatrix, kind="average") -> Dendrogram:
    """Lance-Williams agglomeration on the full matrix.

    At each step the closest pair of clusters merges; exact ties go to the
    lexicographically smallest pair of cluster slots, where a cluster's slot
    is the smallest object index it contains. Ward runs on squared
    distances and reports heights on the original scale.
    """
    kind = LinkageKind(kind)
    if d.orientation != "dissimilarity":
        raise InputError("agglomeration needs dissimilarities")
    D = d.square()
    if kind is LinkageKind.WARD:
        if d.metric == "sqeuclidean":
            pass
        else:
            if d.metric != "euclidean":
                warnings.warn(
                    "Ward linkage assumes Euclidean distances; squaring the given matrix anyway",
                    stacklevel=2,
                )
            D = D * D
    merges = _backend.lance_williams(np.ascontiguousarray(D), _METHOD_CODE[kind])
    return Dendrogram(merges, d.n, kind)


def cut(dg: Dendrogram, k: int) -> Partition:
    """Partition with exactly ``k`` clusters: undo the last ``k - 1`` merges."""
    n = dg.n
    if not 2 <= k <= n - 1:
        raise InputError(f"cut needs 2 <= k <= n-1, got k={k}, n={n}")
    parent = np.arange(2 * n - 1)
    for t in range(n - k):
        left, right = int(dg.merges[t, 0]), int(dg.merges[t, 1])
        parent[left] = parent[right] = n + t

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    return Partition(np.array([root(i) for i in range(n)]))
