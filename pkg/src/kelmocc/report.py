"""Benchmark output files: result CSVs, an aligned text summary, figures.

The two CSVs are pure functions of the benchmark result, with floats
written in shortest round-trip form, so identical runs produce identical
bytes. Wall-clock timings vary between runs and therefore go only into the
text summary, never into the CSVs.
"""

from __future__ import annotations

import csv
import os

import numpy as np

from . import plots

CELLS_FILE = "cells.csv"
DELTA_SWEEP_FILE = "delta_sweep.csv"
SUMMARY_FILE = "summary.txt"

VOCKELM_NOTE = (
    "note: vockelm derives its threshold as delta times the mean training\n"
    "output, so for dismissal fractions of a few percent its acceptance\n"
    "region is extremely tight and it may reject nearly all samples. The\n"
    "scores above apply that rule literally.\n"
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_cells_csv(result, path) -> None:
    """Per (dataset, classifier, seed) row: chosen hyperparameters and metrics."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([
            "dataset", "classifier", "seed", "c", "lambda", "delta",
            "laplacian", "k", "cv_f1", "accuracy", "precision", "recall",
            "f1", "gmean", "error",
        ])
        for cell in result.cells:
            if cell.error is not None:
                writer.writerow([cell.dataset, cell.kind, cell.seed]
                                + [""] * 11 + [cell.error])
                continue
            h = cell.hyper
            r = cell.report
            writer.writerow([
                cell.dataset, cell.kind, cell.seed,
                _fmt(h.c), _fmt(h.lam), _fmt(h.delta),
                h.laplacian.kind, h.laplacian.k,
                _fmt(cell.cv_score),
                _fmt(r.accuracy), _fmt(r.precision), _fmt(r.recall),
                _fmt(r.f1), _fmt(r.gmean), "",
            ])


def write_delta_sweep_csv(result, path) -> None:
    """Plot-ready rows: classifier, dataset, delta, test F1."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["classifier", "dataset", "delta", "f1"])
        for row in result.delta_rows:
            writer.writerow([row.kind, row.dataset, _fmt(row.delta), _fmt(row.f1)])


def write_summary_text(result, path) -> None:
    """Human-readable aligned summary, including timings and failures."""
    lines = []
    lines.append("one-class classification benchmark")
    lines.append("==================================")
    lines.append(f"datasets:    {', '.join(result.dataset_names)}")
    lines.append(f"classifiers: {', '.join(result.kinds)}")
    lines.append(f"seeds:       {', '.join(str(s) for s in result.seeds)}")
    lines.append("")

    lines.append("mean F1 over datasets (per-dataset median over seeds)")
    for kind in result.kinds:
        if kind in result.eta_f1:
            lines.append(f"  {kind:<8s} {result.eta_f1[kind]:.4f}")
        else:
            lines.append(f"  {kind:<8s} (no successful cells)")
    lines.append("")

    name_width = max(len("dataset"), max((len(n) for n in result.dataset_names),
                                         default=0))
    header = "  " + "dataset".ljust(name_width)
    for kind in result.kinds:
        header += f"  {kind:>8s}"
    lines.append("per-dataset median test F1")
    lines.append(header)
    for name in result.dataset_names:
        row = "  " + name.ljust(name_width)
        for kind in result.kinds:
            value = result.dataset_f1.get((kind, name))
            row += f"  {value:8.4f}" if value is not None else "  " + "-".rjust(8)
        lines.append(row)
    lines.append("")

    lines.append("mean refit seconds per classifier")
    for kind in result.kinds:
        times = [c.fit_seconds for c in result.cells
                 if c.kind == kind and c.fit_seconds is not None]
        if times:
            lines.append(f"  {kind:<8s} {float(np.mean(times)):.4f}")
        else:
            lines.append(f"  {kind:<8s} -")
    lines.append("")

    failed = [c for c in result.cells if c.error is not None]
    lines.append(f"failed cells: {len(failed)}")
    for cell in failed:
        lines.append(f"  {cell.dataset} / {cell.kind} / seed {cell.seed}: {cell.error}")
    if "vockelm" in result.kinds:
        lines.append("")
        lines.append(VOCKELM_NOTE.rstrip("\n"))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def write_benchmark_report(result, out_dir, render_figures: bool = True) -> dict:
    """Write all benchmark artifacts into a directory; returns their paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "cells": os.path.join(out_dir, CELLS_FILE),
        "delta_sweep": os.path.join(out_dir, DELTA_SWEEP_FILE),
        "summary": os.path.join(out_dir, SUMMARY_FILE),
    }
    write_cells_csv(result, paths["cells"])
    write_delta_sweep_csv(result, paths["delta_sweep"])
    write_summary_text(result, paths["summary"])
    if render_figures:
        figure_paths = plots.render_delta_sweep(result, out_dir)
        figure_paths += plots.render_summary(result, out_dir)
        paths["figures"] = figure_paths
    return paths
