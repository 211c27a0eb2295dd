"""Partition sweeps correlated against external agreement.

For one dataset: build partitions with several algorithms over a range of k,
score each with every criterion and with ARI against the ground truth,
then report the Pearson correlation of each criterion with ARI over the
pooled sweep.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .baselines import ALL_CRITERIA, CriterionId, evaluate_all
from .clusterers import agglomerate, cut, kmeans
from .core import AuccError, Dataset, InputError, compute_dissimilarities, read_dataset_csv, read_labels
from .external import GroundTruth, UndefinedCorrelationError, adjusted_rand_index, pearson

log = logging.getLogger(__name__)

ALGORITHMS = ("kmeans", "single", "average", "complete", "ward")


@dataclass
class SweepConfig:
    dataset: Optional[str] = None
    ground_truth: Optional[str] = None
    metric: str = "euclidean"
    hca_metric: Optional[str] = None  # defaults to ``metric``
    algorithms: Sequence[str] = ALGORITHMS
    k_min: int = 2
    k_max: Optional[int] = None  # defaults to ceil(sqrt(n))
    n_init: int = 100
    seed: int = 0
    criteria: Sequence[str] = tuple(c.value for c in ALL_CRITERIA)
    standardize: bool = False

    def resolved_k_max(self, n: int) -> int:
        k_max = self.k_max if self.k_max is not None else math.ceil(math.sqrt(n))
        return min(k_max, n - 1)

    def validate(self, n: int) -> None:
        if self.k_min < 2:
            raise InputError("k_min must be at least 2")
        if self.resolved_k_max(n) < self.k_min:
            raise InputError(f"empty k range [{self.k_min}, {self.resolved_k_max(n)}]")
        if self.k_max is not None and self.k_max > n - 1:
            raise InputError(f"k_max={self.k_max} exceeds n-1={n - 1}")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise InputError(f"unknown algorithms {bad}; choose from {ALGORITHMS}")
        for c in self.criteria:
            CriterionId(c)

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True, default=list)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class ExperimentReport:
    rows: list = field(default_factory=list)
    correlations: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"metadata": self.metadata, "correlations": self.correlations, "rows": self.rows}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def rows_csv(self) -> str:
        criteria = self.metadata.get("criteria", [])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["algorithm", "k", "ari", *criteria])
        for row in self.rows:
            w.writerow([row["algorithm"], row["k"], _fmt(row["ari"]), *(_fmt(row["scores"].get(c)) for c in criteria)])
        return buf.getvalue()

    def correlations_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["criterion", "r", "n", "note"])
        for c, entry in self.correlations.items():
            w.writerow([c, _fmt(entry["r"]), entry["n"], entry.get("note") or ""])
        return buf.getvalue()


def _fmt(v):
    return "" if v is None or (isinstance(v, float) and math.isnan(v)) else f"{v:.12g}"


def _partitions(alg, data, d_hca, cfg, ks):
    if alg == "kmeans":
        for k in ks:
            yield k, kmeans(data, k, n_init=cfg.n_init, seed=[cfg.seed, k])
    else:
        dg = agglomerate(d_hca, alg)
        for k in ks:
            yield k, cut(dg, k)


def correlate(rows, criteria) -> dict:
    """Pearson r of each criterion with ARI over the pooled rows.

    Minimised criteria are negated first so that larger is better for all.
    Rows where either value is missing are skipped.
    """
    out = {}
    for c in (CriterionId(c) for c in criteria):
        pairs = [
            (row["scores"][c.value], row["ari"])
            for row in rows
            if row["ari"] is not None and row["scores"].get(c.value) is not None
        ]
        entry = {"r": None, "n": len(pairs), "direction": c.direction, "note": None}
        if len(pairs) < 3:
            entry["note"] = "fewer than 3 scored partitions"
        else:
            x = np.array([v for v, _ in pairs])
            if c.direction == "min":
                x = -x
            try:
                entry["r"] = pearson(x, np.array([a for _, a in pairs]))
            except UndefinedCorrelationError as exc:
                log.warning("correlation for %s excluded: %s", c.value, exc)
                entry["note"] = str(exc)
        out[c.value] = entry
    return out


def sweep(data: Dataset, truth, cfg: SweepConfig) -> ExperimentReport:
    """Run the sweep on in-memory data; ``truth`` is any label array."""
    truth = truth if isinstance(truth, GroundTruth) else GroundTruth(np.asarray(truth))
    if truth.n != data.n:
        raise InputError(f"ground truth has {truth.n} labels for {data.n} objects")
    cfg.validate(data.n)
    if cfg.standardize:
        data = data.standardized()
    d = compute_dissimilarities(data, cfg.metric)
    hca_metric = cfg.hca_metric or cfg.metric
    d_hca = d if hca_metric == cfg.metric else compute_dissimilarities(data, hca_metric)
    criteria = [CriterionId(c) for c in cfg.criteria]
    ks = range(cfg.k_min, cfg.resolved_k_max(data.n) + 1)

    report = ExperimentReport()
    for alg in cfg.algorithms:
        try:
            produced = list(_partitions(alg, data, d_hca, cfg, ks))
        except AuccError as exc:
            produced = [(k, exc) for k in ks]
        for k, p in produced:
            row = {"algorithm": alg, "k": int(k), "ari": None, "scores": {}, "errors": {}}
            if isinstance(p, Exception):
                row["errors"]["partition"] = str(p)
                row["scores"] = {c.value: None for c in criteria}
            else:
                row["ari"] = adjusted_rand_index(p, truth)
                for s in evaluate_all(data, d, p, criteria):
                    row["scores"][s.criterion.value] = s.value if s.defined else None
                    if s.error:
                        row["errors"][s.criterion.value] = s.error
            report.rows.append(row)

    report.correlations = correlate(report.rows, criteria)

    report.metadata = {
        "n": data.n,
        "d": data.d,
        "k_min": cfg.k_min,
        "k_max": cfg.resolved_k_max(data.n),
        "algorithms": list(cfg.algorithms),
        "criteria": [c.value for c in criteria],
        "seed": cfg.seed,
        "config_hash": cfg.digest(),
        "kernels": _backend.name(),
    }
    return report


def run_sweep(cfg: SweepConfig) -> ExperimentReport:
    """Load ``cfg.dataset`` (and ``cfg.ground_truth`` if given) and sweep."""
    if cfg.dataset is None:
        raise InputError("no dataset given")
    data, labels = read_dataset_csv(cfg.dataset)
    if cfg.ground_truth is not None:
        labels = read_labels(cfg.ground_truth)
    if labels is None:
        raise InputError("no ground truth: pass a label file or a trailing 'label' column")
    return sweep(data, labels, cfg)
