"""Random partitions and Monte-Carlo checks of chance-level criterion values.

Random numbers come from numpy's PCG64 bit generator. Every replicate gets
its own stream seeded by ``SeedSequence([seed, cell_index, replicate])``,
so a study is reproducible and independent of evaluation order.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import auc as _auc
from .baselines import CriterionId, evaluate
from .core import Dataset, DissimilarityMatrix, InputError, Partition, compute_dissimilarities
from .external import GroundTruth


@dataclass(frozen=True)
class BalanceScheme:
    """Cluster-size proportions for random partitions.

    ``name`` is one of ``balanced``, ``one_cluster_10pct``,
    ``one_cluster_60pct`` or ``explicit`` (with ``proportions``).
    """

    name: str = "balanced"
    proportions: Optional[tuple] = None

    @classmethod
    def parse(cls, text) -> "BalanceScheme":
        if isinstance(text, BalanceScheme):
            return text
        text = str(text).strip()
        if text.startswith("explicit:"):
            props = tuple(Fraction(t.strip()) for t in text.split(":", 1)[1].split(","))
            return cls("explicit", props)
        if text not in ("balanced", "one_cluster_10pct", "one_cluster_60pct"):
            raise InputError(f"unknown balance scheme {text!r}")
        return cls(text)

    def label(self) -> str:
        if self.name == "explicit":
            return "explicit:" + ",".join(str(p) for p in self.proportions)
        return self.name

    def fractions(self, k: int) -> list[Fraction]:
        if self.name == "balanced":
            return [Fraction(1, k)] * k
        if self.name in ("one_cluster_10pct", "one_cluster_60pct"):
            big = Fraction(1, 10) if self.name == "one_cluster_10pct" else Fraction(6, 10)
            return [big] + [(1 - big) / (k - 1)] * (k - 1)
        props = [Fraction(p) for p in self.proportions]
        if len(props) != k:
            raise InputError(f"explicit scheme has {len(props)} proportions but k={k}")
        if any(p <= 0 for p in props) or sum(props) != 1:
            raise InputError("explicit proportions must be positive and sum to 1")
        return props

    def sizes(self, n: int, k: int) -> list[int]:
        """Floor of n*p per cluster; leftovers go to the largest fractional parts (lowest index first)."""
        exact = [n * p for p in self.fractions(k)]
        sizes = [math.floor(x) for x in exact]
        remainder = n - sum(sizes)
        by_fraction = sorted(range(k), key=lambda c: (-(exact[c] - sizes[c]), c))
        for c in by_fraction[:remainder]:
            sizes[c] += 1
        if min(sizes) < 1:
            raise InputError(f"scheme {self.label()} is infeasible for n={n}, k={k}: sizes {sizes}")
        return sizes


def random_partition(n: int, k: int, scheme="balanced", seed=None) -> Partition:
    """Uniformly random assignment of the scheme's fixed size multiset to ``n`` objects."""
    if not 2 <= k <= n - 1:
        raise InputError(f"random partitions need 2 <= k <= n-1, got k={k}, n={n}")
    sizes = BalanceScheme.parse(scheme).sizes(n, k)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    labels = np.repeat(np.arange(k), sizes)
    return Partition(rng.permutation(labels))


def replicate_rng(seed: int, cell: int, replicate: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, cell, replicate])))


@dataclass
class NullModelReport:
    criterion: str
    seed: int
    cells: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def expected_value_study(
    d: DissimilarityMatrix,
    ks: Sequence[int],
    schemes: Sequence,
    R: int,
    criterion="aucc",
    seed: int = 0,
    data: Optional[Dataset] = None,
) -> NullModelReport:
    """Mean and standard deviation of ``criterion`` over ``R`` random partitions per (k, scheme)."""
    if R < 1:
        raise InputError("R must be at least 1")
    cid = CriterionId(criterion)
    schemes = [BalanceScheme.parse(s) for s in schemes]
    # fail early on infeasible cells
    for k in ks:
        for s in schemes:
            if not 2 <= k <= d.n - 1:
                raise InputError(f"k={k} outside [2, n-1]")
            s.sizes(d.n, k)

    if cid is CriterionId.AUCC:
        score = lambda p: _auc.aucc(d, p)  # noqa: E731
    elif cid is CriterionId.GAMMA:
        score = lambda p: _auc.pair_statistics(d, p).gamma()  # noqa: E731
    else:
        score = lambda p: evaluate(cid, data, d, p).value  # noqa: E731

    report = NullModelReport(cid.value, int(seed))
    cell = 0
    for k in ks:
        for s in schemes:
            values = np.empty(R)
            for r in range(R):
                values[r] = score(random_partition(d.n, k, s, replicate_rng(seed, cell, r)))
            report.cells.append(
                {
                    "k": int(k),
                    "scheme": s.label(),
                    "mean": float(values.mean()),
                    "std": float(values.std(ddof=1)) if R > 1 else 0.0,
                    "R": int(R),
                }
            )
            cell += 1
    return report


# ------------------------------------------------------- Gaussian mixtures


@dataclass(frozen=True)
class MixtureSpec:
    centers: tuple
    variances: tuple
    sizes: tuple
    seed: int = 0

    @classmethod
    def from_dict(cls, obj) -> "MixtureSpec":
        centers = [tuple(float(v) for v in c) for c in obj["centers"]]
        g = len(centers)
        variances = obj["variances"]
        if not isinstance(variances, (list, tuple)):
            variances = [variances] * g
        sizes = obj["sizes"]
        if not isinstance(sizes, (list, tuple)):
            sizes = [sizes] * g
        return cls(tuple(centers), tuple(float(v) for v in variances), tuple(int(s) for s in sizes), int(obj.get("seed", 0)))

    def to_dict(self) -> dict:
        return {"centers": [list(c) for c in self.centers], "variances": list(self.variances),
                "sizes": list(self.sizes), "seed": self.seed}


def generate_gaussian_mixture(centers, variances, sizes, seed=0):
    """Isotropic Gaussian clusters; returns ``(Dataset, ground-truth labels)``.

    ``variances`` is the per-coordinate variance of each component (scalar
    broadcasts). Draws are standard normals scaled by the standard deviation,
    so a fixed seed gives the same underlying noise for every variance.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    g = centers.shape[0]
    variances = np.broadcast_to(np.asarray(variances, dtype=np.float64), (g,))
    sizes = np.broadcast_to(np.asarray(sizes), (g,))
    if np.any(variances <= 0) or not np.all(np.isfinite(variances)):
        raise InputError("variances must be positive and finite")
    if np.any(sizes < 1):
        raise InputError("every component needs at least one object")
    if g < 2:
        raise InputError("a mixture needs at least 2 components")
    rng = np.random.default_rng(seed)
    blocks, labels = [], []
    for c in range(g):
        z = rng.standard_normal((int(sizes[c]), centers.shape[1]))
        blocks.append(centers[c] + np.sqrt(variances[c]) * z)
        labels.append(np.full(int(sizes[c]), c))
    return Dataset(np.vstack(blocks)), GroundTruth(np.concatenate(labels))


def grid_nine_spec(seed: int = 0) -> MixtureSpec:
    """Nine clusters of 50 on the {0, 20, 40}^2 grid, variance 4.5."""
    centers = tuple((x, y) for x in (0.0, 20.0, 40.0) for y in (0.0, 20.0, 40.0))
    return MixtureSpec(centers, (4.5,) * 9, (50,) * 9, seed)


OVERLAP_VARIANCES = (25.0, 100.0, 150.0, 300.0, 400.0, 500.0)


def two_cluster_spec(variance: float, seed: int = 0) -> MixtureSpec:
    """Two clusters of 200 centred at (0, 0) and (40, 40)."""
    return MixtureSpec(((0.0, 0.0), (40.0, 40.0)), (variance, variance), (200, 200), seed)


# ------------------------------------------------------ multi-dataset design

DESIGN_DIMENSIONS = (2, 3, 4, 22, 23, 24)
DESIGN_CLUSTERS = (2, 4, 6, 12, 14, 16)
DESIGN_DISTRIBUTIONS = ("balanced", "one_cluster_10pct", "one_large")


def _design_sizes(n: int, k: int, distribution: str) -> tuple:
    if distribution == "one_large":
        # one cluster of 20% for many clusters, 60% for few
        big = Fraction(1, 5) if k >= 12 else Fraction(3, 5)
        scheme = BalanceScheme("explicit", tuple([big] + [(1 - big) / (k - 1)] * (k - 1)))
    else:
        scheme = BalanceScheme.parse(distribution)
    return tuple(scheme.sizes(n, k))


def null_design(full: bool = False, n: int = 500, seed: int = 0) -> list:
    """Mixture specs for the multi-dataset null-model study.

    The full design crosses six dimensionalities, six reference cluster
    counts and three size distributions (108 datasets). The default is a
    12-dataset subset (d in {2, 23}, k in {2, 6}). Centres are uniform on
    [0, 10]^d with unit variance; dataset ``i`` uses seed ``seed + i``.
    """
    dims = DESIGN_DIMENSIONS if full else (2, 23)
    clusters = DESIGN_CLUSTERS if full else (2, 6)
    specs = []
    for d in dims:
        for k in clusters:
            for dist in DESIGN_DISTRIBUTIONS:
                s = seed + len(specs)
                centers = np.random.default_rng([s, 1]).uniform(0.0, 10.0, size=(k, d))
                specs.append(MixtureSpec(tuple(map(tuple, centers.tolist())), (1.0,) * k, _design_sizes(n, k, dist), s))
    return specs


def null_study(specs, ks, schemes, R: int, criterion="aucc", seed: int = 0, metric: str = "euclidean") -> list:
    """Run :func:`expected_value_study` on every mixture in ``specs``."""
    reports = []
    for spec in specs:
        data, _ = generate_gaussian_mixture(spec.centers, spec.variances, spec.sizes, spec.seed)
        d = compute_dissimilarities(data, metric)
        report = expected_value_study(d, ks, schemes, R, criterion, seed, data)
        reports.append({"dataset": spec.to_dict(), **report.to_dict()})
    return reports
