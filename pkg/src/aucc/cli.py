"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 degenerate partition.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .auc import (
    TiePolicy,
    aucc,
    aucc_from_arrays,
    pair_statistics,
    pair_statistics_from_arrays,
    roc_curve,
    roc_curve_from_arrays,
)
from .baselines import ALL_CRITERIA, evaluate_all
from .core import (
    METRICS,
    DegeneratePartitionError,
    InputError,
    compute_dissimilarities,
    read_dataset_csv,
    read_dissimilarity_csv,
    read_partition,
)
from .gamma import DEFAULT_CAP, gamma_from_arrays, gamma_naive

EXIT_INPUT = 2
EXIT_DEGENERATE = 3

GLOBAL_DEFAULTS = {"metric": "euclidean", "tie_policy": "diagonal", "seed": 0, "format": "json"}


def _add_globals(p: argparse.ArgumentParser) -> None:
    # SUPPRESS lets the flags appear before or after the subcommand
    g = p.add_argument_group("global options")
    g.add_argument("--metric", choices=METRICS, default=argparse.SUPPRESS, help="dissimilarity for raw data (euclidean)")
    g.add_argument("--tie-policy", choices=[t.value for t in TiePolicy], default=argparse.SUPPRESS, help="tie handling (diagonal)")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (0)")
    g.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS, help="output format (json)")


def _add_inputs(p: argparse.ArgumentParser, partition=True) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--data", help="dataset CSV, one object per row")
    src.add_argument("--dissimilarity", help="full n x n matrix CSV")
    src.add_argument("--pairs", help="two-column CSV 'flag,score' of labelled pair scores")
    p.add_argument("--similarity", action="store_true",
                   help="values in --dissimilarity/--pairs are similarities (larger = more alike)")
    if partition:
        p.add_argument("--partition", help="partition file, one integer label per line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aucc", description="Area Under the Curve for Clustering and related validity criteria")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("aucc", help="AUCC of a partition")
    _add_inputs(p)
    _add_globals(p)

    p = sub.add_parser("roc", help="ROC curve points as CSV")
    _add_inputs(p)
    p.add_argument("-o", "--output", help="write CSV here instead of stdout")
    _add_globals(p)

    p = sub.add_parser("gamma", help="Baker-Hubert Gamma (tie-aware)")
    _add_inputs(p)
    p.add_argument("--oracle", action="store_true", help="use the explicit O(n^4/k) enumeration")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest n the oracle accepts")
    _add_globals(p)

    p = sub.add_parser("validate", help="all validity criteria for a partition")
    p.add_argument("--data", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--criteria", nargs="+", default=[c.value for c in ALL_CRITERIA])
    p.add_argument("--standardize", action="store_true")
    _add_globals(p)

    p = sub.add_parser("nullcheck", help="criterion mean over random partitions")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--data")
    src.add_argument("--mixture", help="mixture spec JSON")
    src.add_argument("--design", choices=["default", "full"], help="multi-dataset Gaussian design (12 or 108 datasets)")
    p.add_argument("--k", type=int, nargs="+", default=[2, 5, 10])
    p.add_argument("--schemes", nargs="+", default=["balanced", "one_cluster_10pct", "one_cluster_60pct"])
    p.add_argument("-R", "--replicates", type=int, default=200)
    p.add_argument("--criterion", default="aucc")
    p.add_argument("-o", "--output")
    _add_globals(p)

    p = sub.add_parser("sweep", help="partition sweep correlated with ARI")
    p.add_argument("--data", required=True, help="dataset CSV (trailing 'label' column used as truth)")
    p.add_argument("--truth", help="ground-truth file, one label per line")
    p.add_argument("--algorithms", nargs="+", default=["kmeans", "single", "average", "complete", "ward"])
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int)
    p.add_argument("--n-init", type=int, default=100)
    p.add_argument("--criteria", nargs="+", default=[c.value for c in ALL_CRITERIA])
    p.add_argument("--hca-metric", choices=METRICS)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("-o", "--output", help="output prefix: writes PREFIX.json, PREFIX.rows.csv, PREFIX.corr.csv")
    _add_globals(p)

    p = sub.add_parser("gen-mixture", help="sample a Gaussian mixture dataset")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", help="JSON with centers, variances, sizes, seed")
    src.add_argument("--preset", choices=["grid9", "two-cluster"])
    p.add_argument("--variance", type=float, default=25.0, help="variance for the two-cluster preset")
    p.add_argument("-o", "--output", help="CSV path (stdout if omitted)")
    _add_globals(p)
    return parser


# ----------------------------------------------------------------- helpers


def _emit(args, obj, out=None):
    out = out or sys.stdout
    if args.format == "json":
        json.dump(obj, out, indent=2)
        out.write("\n")
        return
    rows = obj if isinstance(obj, list) else [obj]
    w = csv.DictWriter(out, fieldnames=list(rows[0].keys()), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def _read_pairs(path):
    flags, scores = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip():
                continue
            try:
                flags.append(int(row[0]))
                scores.append(float(row[1]))
            except (ValueError, IndexError):
                if flags:  # only a leading header row may be non-numeric
                    raise InputError(f"{path}: bad row {row}") from None
    return np.array(flags), np.array(scores)


def _load_matrix(args):
    if args.data:
        data, _ = read_dataset_csv(args.data)
        return compute_dissimilarities(data, args.metric)
    return read_dissimilarity_csv(args.dissimilarity, "similarity" if args.similarity else "dissimilarity")


def _need_partition(args):
    if not args.partition:
        raise InputError("--partition is required with --data/--dissimilarity")
    return read_partition(args.partition)


def _stats_dict(s):
    return {"s_plus": s.s_plus, "s_minus": s.s_minus, "s_zero": s.s_zero,
            "n_within": s.n_within, "n_between": s.n_between}


# ---------------------------------------------------------------- commands


def cmd_aucc(args):
    orient = "similarity" if args.similarity else "dissimilarity"
    if args.pairs:
        flags, scores = _read_pairs(args.pairs)
        value = aucc_from_arrays(flags, scores, orient, args.tie_policy)
        stats = pair_statistics_from_arrays(flags, scores, orient)
    else:
        d, p = _load_matrix(args), _need_partition(args)
        value = aucc(d, p, args.tie_policy)
        stats = pair_statistics(d, p)
    _emit(args, {"aucc": value, "tie_policy": args.tie_policy, **_stats_dict(stats)})


def cmd_roc(args):
    if args.pairs:
        flags, scores = _read_pairs(args.pairs)
        curve = roc_curve_from_arrays(flags, scores, "similarity" if args.similarity else "dissimilarity")
    else:
        curve = roc_curve(_load_matrix(args), _need_partition(args))
    if args.output:
        with open(args.output, "w", newline="") as fh:
            curve.write_csv(fh)
    else:
        curve.write_csv(sys.stdout)


def cmd_gamma(args):
    orient = "similarity" if args.similarity else "dissimilarity"
    if args.pairs:
        flags, scores = _read_pairs(args.pairs)
        if args.oracle:
            res = gamma_from_arrays(flags, scores, orient)
            stats, value = res.stats, res.gamma
        else:
            stats = pair_statistics_from_arrays(flags, scores, orient)
            value = stats.gamma()
    else:
        d, p = _load_matrix(args), _need_partition(args)
        if args.oracle:
            res = gamma_naive(d, p, cap=args.cap)
            stats, value = res.stats, res.gamma
        else:
            stats = pair_statistics(d, p)
            value = stats.gamma()
    _emit(args, {"gamma": value, "oracle": bool(args.oracle), **_stats_dict(stats)})


def cmd_validate(args):
    data, _ = read_dataset_csv(args.data)
    if args.standardize:
        data = data.standardized()
    p = read_partition(args.partition)
    d = compute_dissimilarities(data, args.metric)
    scores = evaluate_all(data, d, p, args.criteria)
    rows = [{"criterion": s.criterion.value, "value": s.value if s.defined else None,
             "direction": s.direction, "error": s.error} for s in scores]
    _emit(args, rows)


def cmd_nullcheck(args):
    from .nullmodel import MixtureSpec, expected_value_study, generate_gaussian_mixture, null_design, null_study

    if args.design:
        specs = null_design(full=args.design == "full", seed=args.seed)
        reports = null_study(specs, args.k, args.schemes, args.replicates, args.criterion, args.seed, args.metric)
        rows = [{"dataset": i, **cell} for i, r in enumerate(reports) for cell in r["cells"]]
        payload = {"criterion": args.criterion, "seed": args.seed, "datasets": reports}
    else:
        if args.mixture:
            spec = MixtureSpec.from_dict(json.loads(Path(args.mixture).read_text()))
            data, _ = generate_gaussian_mixture(spec.centers, spec.variances, spec.sizes, spec.seed)
        else:
            data, _ = read_dataset_csv(args.data)
        d = compute_dissimilarities(data, args.metric)
        report = expected_value_study(d, args.k, args.schemes, args.replicates, args.criterion, args.seed, data)
        rows, payload = report.cells, report.to_dict()
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args):
    from .pipeline import SweepConfig, run_sweep

    cfg = SweepConfig(
        dataset=args.data, ground_truth=args.truth, metric=args.metric, hca_metric=args.hca_metric,
        algorithms=tuple(args.algorithms), k_min=args.k_min, k_max=args.k_max, n_init=args.n_init,
        seed=args.seed, criteria=tuple(args.criteria), standardize=args.standardize,
    )
    report = run_sweep(cfg)
    if args.output:
        Path(f"{args.output}.json").write_text(report.to_json(indent=2) + "\n")
        Path(f"{args.output}.rows.csv").write_text(report.rows_csv())
        Path(f"{args.output}.corr.csv").write_text(report.correlations_csv())
    if args.format == "json":
        sys.stdout.write(json.dumps({"metadata": report.metadata, "correlations": report.correlations}, indent=2) + "\n")
    else:
        sys.stdout.write(report.correlations_csv())


def cmd_gen_mixture(args):
    from .nullmodel import MixtureSpec, generate_gaussian_mixture, grid_nine_spec, two_cluster_spec

    if args.spec:
        spec = MixtureSpec.from_dict(json.loads(Path(args.spec).read_text()))
    elif args.preset == "grid9":
        spec = grid_nine_spec(args.seed)
    else:
        spec = two_cluster_spec(args.variance, args.seed)
    data, truth = generate_gaussian_mixture(spec.centers, spec.variances, spec.sizes, spec.seed)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow([f"x{j}" for j in range(data.d)] + ["label"])
        for row, lab in zip(data.X, truth.labels):
            w.writerow([repr(float(v)) for v in row] + [int(lab)])
    finally:
        if out is not sys.stdout:
            out.close()


COMMANDS = {
    "aucc": cmd_aucc,
    "roc": cmd_roc,
    "gamma": cmd_gamma,
    "validate": cmd_validate,
    "nullcheck": cmd_nullcheck,
    "sweep": cmd_sweep,
    "gen-mixture": cmd_gen_mixture,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        COMMANDS[args.command](args)
    except DegeneratePartitionError as exc:
        print(f"aucc: degenerate partition: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (InputError, OSError, ValueError) as exc:
        print(f"aucc: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
