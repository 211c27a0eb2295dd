"""Area Under the Curve for Clustering (AUCC) and companion validity criteria."""
from . import _backend
from .auc import (
    PairStatistics,
    RocCurve,
    TiePolicy,
    aucc,
    aucc_from_arrays,
    pair_statistics,
    pair_statistics_from_arrays,
    roc_curve,
    roc_curve_from_arrays,
)
from .core import (
    AuccError,
    Dataset,
    DegeneratePartitionError,
    DissimilarityMatrix,
    InputError,
    Partition,
    compute_dissimilarities,
    pair_index,
    pairwise,
)
from .gamma import GammaResult, gamma_from_arrays, gamma_naive

__version__ = "0.1.0"

__all__ = [
    "AuccError",
    "Dataset",
    "DegeneratePartitionError",
    "DissimilarityMatrix",
    "GammaResult",
    "InputError",
    "PairStatistics",
    "Partition",
    "RocCurve",
    "TiePolicy",
    "aucc",
    "aucc_from_arrays",
    "compute_dissimilarities",
    "gamma_from_arrays",
    "gamma_naive",
    "pair_index",
    "pair_statistics",
    "pair_statistics_from_arrays",
    "pairwise",
    "roc_curve",
    "roc_curve_from_arrays",
]
