"""Bundled and downloadable benchmark datasets.

Iris and Ruspini ship with the package. The other UCI sets are fetched on
demand, converted to the package CSV layout (features then a ``label``
column) and verified against a pinned SHA-256 where one is recorded.
"""
from __future__ import annotations

import hashlib
import io
import logging
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .core import Dataset, InputError, read_dataset_csv

log = logging.getLogger(__name__)

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"


def _bundled(name: str):
    with resources.as_file(resources.files("aucc") / "data" / name) as path:
        return read_dataset_csv(path)


def load_iris() -> tuple[Dataset, np.ndarray]:
    return _bundled("iris.csv")


def load_ruspini() -> Dataset:
    data, _ = _bundled("ruspini.csv")
    return data


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("aucc") / "data" / f"{name}.csv"))


# --------------------------------------------------------------- fetching


def _rows(text: str, sep: Optional[str] = ","):
    for line in text.splitlines():
        line = line.strip()
        if line:
            yield line.split(sep) if sep else line.split()


def _label_last(text, sep=","):
    rows = [r for r in _rows(text, sep) if "?" not in r]
    return [list(map(float, r[:-1])) for r in rows], [r[-1] for r in rows]


def _balance(text):
    rows = list(_rows(text))
    return [list(map(float, r[1:])) for r in rows], [r[0] for r in rows]


def _ecoli(text):
    rows = list(_rows(text, None))
    return [list(map(float, r[1:-1])) for r in rows], [r[-1] for r in rows]


def _wisconsin(text):
    rows = [r for r in _rows(text) if "?" not in r]
    return [list(map(float, r[1:-1])) for r in rows], [r[-1] for r in rows]


def _blocks(per_class):
    def parse(text):
        X = [list(map(float, r)) for r in _rows(text, None)]
        return X, [str(i // per_class) for i in range(len(X))]
    return parse


@dataclass(frozen=True)
class Source:
    url: str
    parse: Callable
    sha256: Optional[str] = None


SOURCES = {
    "balance_scale": Source(f"{UCI}/balance-scale/balance-scale.data", _balance),
    "control_chart": Source(f"{UCI}/synthetic_control-mld/synthetic_control.data", _blocks(100)),
    "ecoli": Source(f"{UCI}/ecoli/ecoli.data", _ecoli),
    "iris": Source(f"{UCI}/iris/iris.data", _label_last),
    "karhunen": Source(f"{UCI}/mfeat/mfeat-kar", _blocks(200)),
    "sonar": Source(f"{UCI}/undocumented/connectionist-bench/sonar/sonar.all-data", _label_last),
    "wisconsin": Source(f"{UCI}/breast-cancer-wisconsin/breast-cancer-wisconsin.data", _wisconsin),
}


def fetch(name: str, dest, opener=urllib.request.urlopen) -> Path:
    """Download ``name`` into ``dest/<name>.csv``; returns the path.

    Raises :class:`InputError` on a checksum mismatch. When no checksum is
    pinned the digest is logged so it can be recorded.
    """
    if name not in SOURCES:
        raise InputError(f"unknown dataset {name!r}; available: {sorted(SOURCES)}")
    src = SOURCES[name]
    with opener(src.url) as resp:
        raw = resp.read()
    digest = hashlib.sha256(raw).hexdigest()
    if src.sha256 is not None and digest != src.sha256:
        raise InputError(f"{name}: checksum mismatch ({digest} != {src.sha256})")
    if src.sha256 is None:
        log.info("%s sha256=%s (not pinned)", name, digest)
    X, labels = src.parse(raw.decode("latin-1"))
    codes = {lab: i for i, lab in enumerate(dict.fromkeys(labels))}
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    out = dest / f"{name}.csv"
    buf = io.StringIO()
    width = len(X[0])
    buf.write(",".join(f"f{j}" for j in range(width)) + ",label\n")
    for row, lab in zip(X, labels):
        buf.write(",".join(repr(v) for v in row) + f",{codes[lab]}\n")
    out.write_text(buf.getvalue())
    return out


def main(argv=None) -> int:
    import argparse

    parser = argparse.ArgumentParser(prog="python -m aucc.datasets", description="download UCI benchmark sets")
    parser.add_argument("names", nargs="*", default=sorted(SOURCES), help=f"any of {sorted(SOURCES)}")
    parser.add_argument("--dest", default="data", help="output directory")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    for name in args.names:
        try:
            print(fetch(name, args.dest))
        except (OSError, InputError) as exc:
            print(f"{name}: {exc}")
            return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
