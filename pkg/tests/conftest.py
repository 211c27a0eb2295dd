import numpy as np
import pytest

from aucc import _backend
from aucc.core import DissimilarityMatrix, Partition

# similarity matrix of the seven-object toy example, objects a..g
TOY_SIMILARITY = np.array(
    [
        [1.00, 0.82, 0.72, 0.35, 0.05, 0.03, 0.00],
        [0.82, 1.00, 0.72, 0.52, 0.23, 0.20, 0.18],
        [0.72, 0.72, 1.00, 0.45, 0.14, 0.15, 0.09],
        [0.35, 0.52, 0.45, 1.00, 0.68, 0.68, 0.63],
        [0.05, 0.23, 0.14, 0.68, 1.00, 0.91, 0.95],
        [0.03, 0.20, 0.15, 0.68, 0.91, 1.00, 0.90],
        [0.00, 0.18, 0.09, 0.63, 0.95, 0.90, 1.00],
    ]
)
TOY_LABELS = [0, 0, 0, 0, 1, 1, 1]


@pytest.fixture(params=_backend.available())
def backend(request):
    previous = _backend.use(request.param)
    yield request.param
    _backend.use(previous)


@pytest.fixture
def toy():
    return DissimilarityMatrix.from_square(TOY_SIMILARITY, "similarity"), Partition(TOY_LABELS)


def random_instance(rng, n, k=None, ties=False):
    """Random dissimilarity matrix and partition; ``ties`` rounds values onto a coarse grid."""
    k = k or int(rng.integers(2, n))
    labels = np.concatenate([np.arange(k), rng.integers(0, k, n - k)])
    rng.shuffle(labels)
    X = rng.normal(size=(n, int(rng.integers(1, 4))))
    diff = X[:, None, :] - X[None, :, :]
    D = np.sqrt((diff**2).sum(axis=2))
    if ties:
        D = np.round(D * 2) / 2
    return DissimilarityMatrix.from_square(D), Partition(labels)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int("".join(filter(str.isdigit, k))), k)):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
