"""Command-line front end.

Subcommands: train, predict, evaluate, gridsearch, benchmark, synth. Every
command is a pure function of its flags, input files and seed; nothing
reads the clock for randomness. Exit codes: 0 success, 1 flag/data errors,
2 numeric failures (singular solves).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

import numpy as np

from . import linalg, synth
from .data import load_csv, load_features_csv, load_manifest
from .evaluate import GridSearchError, GridSpec, evaluate_model, grid_search, run_benchmark
from .model_io import load_model, save_model
from .occ import KINDS, HyperParams, predict, train, training_scores
from .report import write_benchmark_report
from .variance import LAPLACIAN_KINDS, LaplacianSpec


class _Parser(argparse.ArgumentParser):
    """Parser that exits with status 1 on bad flags instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_dataset_flags(p):
    p.add_argument("--data", required=True, help="CSV dataset path")
    p.add_argument("--label-col", default="label",
                   help="label column name or index (default: label)")
    p.add_argument("--target-label", default="1",
                   help="label value marking the target class (default: 1)")
    p.add_argument("--no-header", action="store_true",
                   help="treat the first CSV row as data, not column names")


def _add_hyper_flags(p):
    p.add_argument("--c", type=float, default=1.0, help="regularization weight C")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="variance-penalty weight lambda")
    p.add_argument("--delta", type=float, default=0.1, help="fraction of dismissal")
    p.add_argument("--k", type=int, default=1,
                   help="cluster count for the intra-class Laplacian")
    p.add_argument("--laplacian", choices=LAPLACIAN_KINDS, default="none",
                   help="variance Laplacian kind")
    p.add_argument("--target-value", type=float, default=1.0,
                   help="regression target r for boundary classifiers")


def _add_grid_flags(p):
    p.add_argument("--grid-c", default=None, help="comma-separated C values")
    p.add_argument("--grid-delta", default=None, help="comma-separated delta values")
    p.add_argument("--grid-k", default=None, help="comma-separated k values")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="variance-penalty weight lambda (fixed, not swept)")
    p.add_argument("--laplacian", choices=LAPLACIAN_KINDS, default=None,
                   help="restrict the Laplacian sweep to one kind")
    p.add_argument("--target-value", type=float, default=1.0,
                   help="regression target r for boundary classifiers")


def _parse_list(text: str, convert, flag: str) -> tuple:
    parts = [part.strip() for part in text.split(",") if part.strip() != ""]
    try:
        values = tuple(convert(part) for part in parts)
    except ValueError:
        raise ValueError(f"cannot parse {flag} value {text!r}") from None
    if not values:
        raise ValueError(f"{flag} must list at least one value")
    return values


def _grid_from_args(args) -> GridSpec:
    kwargs = {"lam": args.lam, "target_value": args.target_value}
    if args.grid_c is not None:
        kwargs["c_values"] = _parse_list(args.grid_c, float, "--grid-c")
    if args.grid_delta is not None:
        kwargs["delta_values"] = _parse_list(args.grid_delta, float, "--grid-delta")
    if args.grid_k is not None:
        kwargs["k_values"] = _parse_list(args.grid_k, int, "--grid-k")
    if args.laplacian is not None:
        kwargs["laplacian_kinds"] = (args.laplacian,)
    return GridSpec(**kwargs)


def _load_dataset(args):
    return load_csv(args.data, args.label_col, args.target_label,
                    has_header=not args.no_header)


def cmd_train(args) -> int:
    ds = _load_dataset(args)
    hyper = HyperParams(
        c=args.c,
        lam=args.lam,
        delta=args.delta,
        laplacian=LaplacianSpec(kind=args.laplacian, k=args.k),
        target_value=args.target_value,
    )
    x = ds.x[ds.target_indices]
    started = time.perf_counter()
    model = train(args.classifier, x, hyper, seed=args.seed)
    elapsed = time.perf_counter() - started
    save_model(model, args.model_out)
    rejected = int(np.sum(training_scores(model) > model.theta))
    print(f"classifier:          {model.kind}")
    print(f"training samples:    {model.n_train} targets, {model.n_features} features")
    print(f"kernel width sigma:  {model.kernel.sigma:.6g}")
    print(f"threshold theta:     {model.theta:.6g}")
    print(f"training rejections: {rejected} of {model.n_train}")
    print(f"fit seconds:         {elapsed:.4f}")
    print(f"model written to {args.model_out}")
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.model)
    label_column = None if args.no_label else args.label_col
    x = load_features_csv(args.data, label_column, has_header=not args.no_header)
    predictions = predict(model, x)
    lines = ["score,label"]
    lines.extend(f"{p.score!r},{p.label}" for p in predictions)
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {len(predictions)} predictions to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_evaluate(args) -> int:
    model = load_model(args.model)
    ds = _load_dataset(args)
    report = evaluate_model(model, ds)
    c = report.confusion
    lines = [
        f"samples:   {c.total} ({ds.target_indices.size} target, "
        f"{ds.outlier_indices.size} outlier)",
        f"confusion: tp={c.tp} fp={c.fp} tn={c.tn} fn={c.fn}",
        f"accuracy:  {report.accuracy:.4f}",
        f"precision: {report.precision:.4f}",
        f"recall:    {report.recall:.4f}",
        f"f1:        {report.f1:.4f}",
        f"gmean:     {report.gmean:.4f}",
    ]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"report written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_gridsearch(args) -> int:
    ds = _load_dataset(args)
    grid = _grid_from_args(args)
    result = grid_search(ds, args.classifier, grid, args.seed)
    best = result.best
    print(f"grid points:    {result.n_points} ({result.n_failed} failed)")
    print(f"best c:         {best.c:g}")
    print(f"best delta:     {best.delta:g}")
    lap = best.laplacian
    lap_text = lap.kind + (f" (k={lap.k})" if lap.kind == "intra" else "")
    print(f"best laplacian: {lap_text}")
    print(f"lambda:         {best.lam:g}")
    print(f"cv mean F1:     {result.best_score:.4f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            n_folds = len(result.folds)
            writer.writerow(["c", "lambda", "delta", "laplacian", "k", "mean_f1"]
                            + [f"fold{i + 1}_f1" for i in range(n_folds)]
                            + ["error"])
            for entry in result.trace:
                h = entry.hyper
                row = [repr(h.c), repr(h.lam), repr(h.delta),
                       h.laplacian.kind, h.laplacian.k]
                if entry.error is None:
                    row += [repr(entry.mean_f1)]
                    row += [repr(f1) for f1 in entry.fold_f1]
                    row += [""]
                else:
                    row += [""] * (1 + n_folds) + [entry.error]
                writer.writerow(row)
        print(f"trace written to {args.out}")
    return 0


def cmd_benchmark(args) -> int:
    if args.manifest is not None:
        datasets = load_manifest(args.manifest)
    elif args.data is not None:
        datasets = [load_csv(args.data, args.label_col, args.target_label,
                             has_header=not args.no_header)]
    else:
        raise ValueError("benchmark needs --manifest or --data")
    kinds = _parse_list(args.classifier, str, "--classifier")
    for kind in kinds:
        if kind not in KINDS:
            raise ValueError(f"unknown classifier {kind!r}; expected one of {KINDS}")
    seeds = _parse_list(args.seeds, int, "--seeds")
    grid = _grid_from_args(args)
    result = run_benchmark(datasets, kinds, grid, seeds)
    paths = write_benchmark_report(result, args.out,
                                   render_figures=not args.no_figures)
    print("mean F1 over datasets (per-dataset median over seeds)")
    for kind in result.kinds:
        if kind in result.eta_f1:
            print(f"  {kind:<8s} {result.eta_f1[kind]:.4f}")
        else:
            print(f"  {kind:<8s} (no successful cells)")
    failed = sum(1 for cell in result.cells if cell.error is not None)
    print(f"failed cells: {failed} of {len(result.cells)}")
    print(f"report written to {args.out}")
    if "figures" in paths:
        for figure in paths["figures"]:
            print(f"figure: {figure}")
    return 0


def cmd_synth(args) -> int:
    if args.suite:
        datasets = synth.default_suite(args.seed)
        os.makedirs(args.out, exist_ok=True)
        entries = []
        for ds in datasets:
            path = os.path.join(args.out, f"{ds.name}.csv")
            synth.write_csv(ds, path)
            entries.append({
                "name": ds.name,
                "path": f"{ds.name}.csv",
                "label_column": "label",
                "target_label": "1",
            })
            print(f"wrote {ds.n_samples} rows "
                  f"({ds.target_indices.size} target) to {path}")
        manifest_path = os.path.join(args.out, "manifest.json")
        with open(manifest_path, "w", encoding="utf-8") as handle:
            json.dump(entries, handle, indent=2)
            handle.write("\n")
        print(f"manifest written to {manifest_path}")
        return 0
    centers = None
    if args.centers > 1:
        centers = synth.axis_centers(args.centers, args.dims, args.spread)
    ds = synth.make_cloud_shell(args.n_target, args.n_outlier, args.dims,
                                args.separation, seed=args.seed,
                                centers=centers)
    synth.write_csv(ds, args.out)
    print(f"wrote {ds.n_samples} rows ({args.n_target} target, "
          f"{args.n_outlier} outlier) to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kelmocc",
        description="Kernel-ELM one-class classification toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("train", help="fit a classifier on a dataset's target rows")
    _add_dataset_flags(p)
    p.add_argument("--classifier", required=True, choices=KINDS)
    _add_hyper_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model-out", required=True, help="where to write the model file")
    p.set_defaults(handler=cmd_train)

    p = sub.add_parser("predict", help="score rows with a saved model")
    p.add_argument("--model", required=True, help="model file to load")
    p.add_argument("--data", required=True, help="CSV path to score")
    p.add_argument("--label-col", default="label",
                   help="label column to drop before scoring (default: label)")
    p.add_argument("--no-label", action="store_true",
                   help="the file has no label column; use every column")
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--out", default=None, help="write predictions here instead of stdout")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("evaluate", help="score a labeled dataset and report metrics")
    p.add_argument("--model", required=True)
    _add_dataset_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("gridsearch",
                       help="pick hyperparameters by cross-validated F1")
    _add_dataset_flags(p)
    p.add_argument("--classifier", required=True, choices=KINDS)
    _add_grid_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the full CV trace CSV here")
    p.set_defaults(handler=cmd_gridsearch)

    p = sub.add_parser("benchmark",
                       help="run the split/search/refit/test protocol")
    p.add_argument("--manifest", default=None,
                   help="JSON manifest listing datasets")
    p.add_argument("--data", default=None, help="single CSV dataset path")
    p.add_argument("--label-col", default="label")
    p.add_argument("--target-label", default="1")
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--classifier", default=",".join(KINDS),
                   help="comma-separated classifier kinds")
    _add_grid_flags(p)
    p.add_argument("--seeds", default="0", help="comma-separated seeds")
    p.add_argument("--out", default="benchmark_out",
                   help="output directory for CSVs, summary and figures")
    p.add_argument("--no-figures", action="store_true",
                   help="skip rendering PNG figures")
    p.set_defaults(handler=cmd_benchmark)

    p = sub.add_parser("synth", help="generate a cloud-plus-shell dataset CSV")
    p.add_argument("--n-target", type=int, default=100)
    p.add_argument("--n-outlier", type=int, default=50)
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--separation", type=float, default=8.0,
                   help="shell inner radius in target standard deviations")
    p.add_argument("--centers", type=int, default=1,
                   help="number of target cluster centers")
    p.add_argument("--spread", type=float, default=3.0,
                   help="distance of cluster centers from the origin")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", action="store_true",
                   help="write the five-dataset benchmark suite plus manifest "
                        "into the --out directory")
    p.add_argument("--out", required=True, help="output CSV path (or directory with --suite)")
    p.set_defaults(handler=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (linalg.SingularMatrixError, GridSearchError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
