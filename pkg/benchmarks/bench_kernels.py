"""Compare the compiled and numpy kernels.

    python benchmarks/bench_kernels.py [--sizes 500 1000 2000] [--hca-size 300] [--repeat 5]

Times the block sweep behind AUCC (pairs already ranked) and the
Lance-Williams agglomeration, for every available backend, and checks that
both backends return identical results.
"""
import argparse
import timeit

import numpy as np

from aucc import _backend
from aucc.clusterers import _METHOD_CODE, LinkageKind
from aucc.core import Dataset, Partition, compute_dissimilarities


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_sweep(n, repeat, rng):
    d = compute_dissimilarities(Dataset(rng.random((n, 2))))
    p = Partition(rng.integers(0, 5, n))
    r = d.ranking  # sorting is shared by both backends; time only the sweep
    labels = np.ascontiguousarray(p.labels, dtype=np.int64)
    out = {}
    for name in _backend.available():
        _backend.use(name)
        result = _backend.sweep_pairs(r.pair_i, r.pair_j, labels, r.block_ends)
        t = _best(lambda: _backend.sweep_pairs(r.pair_i, r.pair_j, labels, r.block_ends), repeat)
        out[name] = (t, result)
    return out


def bench_linkage(n, kind, repeat, rng):
    D = compute_dissimilarities(Dataset(rng.random((n, 2)))).square()
    if kind is LinkageKind.WARD:
        D = D * D
    out = {}
    for name in _backend.available():
        _backend.use(name)
        result = _backend.lance_williams(D.copy(), _METHOD_CODE[kind])
        t = _best(lambda: _backend.lance_williams(D.copy(), _METHOD_CODE[kind]), repeat)
        out[name] = (t, result)
    return out


def _report(label, timings):
    names = list(timings)
    cells = "  ".join(f"{name}={timings[name][0] * 1e3:9.2f} ms" for name in names)
    line = f"{label:<24}{cells}"
    if len(names) == 2:
        line += f"  speedup={timings['python'][0] / timings['cython'][0]:6.1f}x"
        a, b = timings["cython"][1], timings["python"][1]
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        line += "  identical" if same else "  MISMATCH"
    print(line)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000])
    parser.add_argument("--hca-size", type=int, default=300)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    previous = _backend.name()
    print(f"backends: {', '.join(_backend.available())}")
    try:
        for n in args.sizes:
            _report(f"sweep n={n}", bench_sweep(n, args.repeat, rng))
        for kind in LinkageKind:
            _report(f"{kind.value} n={args.hca_size}", bench_linkage(args.hca_size, kind, args.repeat, rng))
    finally:
        _backend.use(previous)


if __name__ == "__main__":
    main()
