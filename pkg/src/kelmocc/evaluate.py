"""Metrics, cross-validated grid search, and the benchmark harness.

The evaluation protocol, end to end: split each dataset 80/20 stratified by
label, run a 5-fold cross-validated grid search on the 80% pool (training
folds contain targets only), refit on all pool targets with the winning
hyperparameters, and score the held-out 20%. The harness repeats this per
(dataset, classifier, seed) and aggregates per-classifier mean F1 over
datasets, taking the median over seeds first.

Normalization statistics and the kernel width are always fitted on the
samples a model trains on, never on validation or test rows.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .data import (
    FoldPlan,
    LabeledDataset,
    NormStats,
    SplitPlan,
    make_folds,
    split_80_20,
    zscore_apply,
    zscore_fit,
)
from .kernel import KernelSpec, cross_gram, estimate_sigma, gram
from .occ import (
    KINDS,
    VARIANCE_KINDS,
    HyperParams,
    TrainedModel,
    deviation_scores,
    fit,
    output_weights,
    percentile_threshold,
    predict,
    replace_norm,
    validate_kind,
)
from .variance import LAPLACIAN_KINDS, LaplacianSpec, build_laplacian

DEFAULT_C_VALUES = tuple(float(2.0 ** p) for p in range(-5, 6))
DEFAULT_DELTA_VALUES = (0.01, 0.05, 0.10)
DEFAULT_K_VALUES = tuple(range(1, 11))
DEFAULT_LAPLACIAN_KINDS = ("class", "intra")


@dataclass(frozen=True)
class Confusion:
    """Counts of a 2x2 confusion table; the target class is positive."""

    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        for field_name in ("tp", "fp", "tn", "fn"):
            value = getattr(self, field_name)
            if not isinstance(value, (int, np.integer)) or value < 0:
                raise ValueError(f"{field_name} must be a non-negative integer, got {value!r}")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @classmethod
    def from_labels(cls, true_labels, predicted_labels) -> "Confusion":
        t = np.asarray(true_labels, dtype=int).ravel()
        p = np.asarray(predicted_labels, dtype=int).ravel()
        if t.shape != p.shape:
            raise ValueError(
                f"label arrays must align: {t.shape[0]} true vs {p.shape[0]} predicted"
            )
        bad = set(np.unique(t)) | set(np.unique(p))
        if not bad <= {1, -1}:
            raise ValueError(f"labels must be +1 or -1, got {sorted(bad - {1, -1})}")
        return cls(
            tp=int(np.sum((t == 1) & (p == 1))),
            fp=int(np.sum((t == -1) & (p == 1))),
            tn=int(np.sum((t == -1) & (p == -1))),
            fn=int(np.sum((t == 1) & (p == -1))),
        )


@dataclass(frozen=True)
class EvalReport:
    """A confusion table and the five derived metrics, each in [0, 1]."""

    confusion: Confusion
    accuracy: float
    precision: float
    recall: float
    f1: float
    gmean: float


def metrics(confusion: Confusion) -> EvalReport:
    """All five metrics from raw counts.

    A zero denominator maps the metric to 0 rather than NaN, so degenerate
    cells (no predicted positives, no actual positives) stay aggregable.
    F1 is computed as 2tp/(2tp+fp+fn) in one division instead of through
    precision and recall, which keeps it exact on integer counts.
    """
    c = confusion
    if c.total == 0:
        raise ValueError("cannot compute metrics over zero samples")
    accuracy = (c.tp + c.tn) / c.total
    precision = c.tp / (c.tp + c.fp) if c.tp + c.fp > 0 else 0.0
    recall = c.tp / (c.tp + c.fn) if c.tp + c.fn > 0 else 0.0
    f1_denom = 2 * c.tp + c.fp + c.fn
    f1 = 2 * c.tp / f1_denom if f1_denom > 0 else 0.0
    g_denom = (c.tp + c.fp) * (c.tp + c.fn)
    gmean = c.tp / math.sqrt(g_denom) if g_denom > 0 else 0.0
    return EvalReport(
        confusion=c,
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        gmean=gmean,
    )


def mean_f1(items) -> float:
    """Arithmetic mean of F1 scores; accepts reports or plain numbers."""
    values = []
    for item in items:
        if isinstance(item, EvalReport):
            values.append(item.f1)
        else:
            values.append(float(item))
    if not values:
        raise ValueError("mean_f1 needs at least one value")
    return float(np.mean(values))


def evaluate_model(model: TrainedModel, ds: LabeledDataset) -> EvalReport:
    """Score every row of a labeled dataset against its true labels."""
    predicted = [p.label for p in predict(model, ds.x)]
    return metrics(Confusion.from_labels(ds.labels, predicted))


@dataclass(frozen=True)
class GridSpec:
    """The hyperparameter ranges a grid search sweeps.

    Defaults are the standard protocol: C over the eleven powers of two from
    2^-5 to 2^5, dismissal fractions 1%/5%/10%, cluster counts 1..10 for the
    intra-class variance embedding, and lambda pinned at 1.
    """

    c_values: tuple = DEFAULT_C_VALUES
    delta_values: tuple = DEFAULT_DELTA_VALUES
    k_values: tuple = DEFAULT_K_VALUES
    lam: float = 1.0
    laplacian_kinds: tuple = DEFAULT_LAPLACIAN_KINDS
    target_value: float = 1.0

    def __post_init__(self):
        if not self.c_values:
            raise ValueError("c_values must not be empty")
        if not self.delta_values:
            raise ValueError("delta_values must not be empty")
        if not self.k_values:
            raise ValueError("k_values must not be empty")
        if not self.laplacian_kinds:
            raise ValueError("laplacian_kinds must not be empty")
        for kind in self.laplacian_kinds:
            if kind not in LAPLACIAN_KINDS:
                raise ValueError(
                    f"unknown laplacian kind {kind!r}; expected one of {LAPLACIAN_KINDS}"
                )

    def laplacian_specs(self, classifier_kind: str) -> list[LaplacianSpec]:
        """The Laplacian sweep for one classifier; plain kinds get none."""
        if classifier_kind not in VARIANCE_KINDS:
            return [LaplacianSpec(kind="none")]
        specs = []
        for kind in self.laplacian_kinds:
            if kind == "intra":
                specs.extend(LaplacianSpec(kind="intra", k=k) for k in self.k_values)
            else:
                specs.append(LaplacianSpec(kind=kind))
        return specs


class TraceEntry(NamedTuple):
    hyper: HyperParams
    fold_f1: tuple | None
    mean_f1: float | None
    error: str | None


@dataclass(frozen=True)
class GridSearchResult:
    kind: str
    best: HyperParams
    best_score: float
    trace: tuple
    folds: FoldPlan
    fold_sigmas: tuple
    fold_stats: tuple

    @property
    def n_points(self) -> int:
        return len(self.trace)

    @property
    def n_failed(self) -> int:
        return sum(1 for entry in self.trace if entry.error is not None)


class GridSearchError(RuntimeError):
    """Raised when every grid point fails; carries the failure log."""

    def __init__(self, failures):
        self.failures = tuple(failures)
        preview = "; ".join(self.failures[:3])
        super().__init__(
            f"all {len(self.failures)} grid points failed; first failures: {preview}"
        )


class _FoldWork(NamedTuple):
    stats: NormStats
    xn: np.ndarray
    omega: np.ndarray
    k_val: np.ndarray
    val_xn: np.ndarray
    val_labels: np.ndarray
    sigma: float
    laplacians: dict


def _prepare_fold(ds: LabeledDataset, train_idx, val_idx) -> _FoldWork:
    stats = zscore_fit(ds.x[train_idx])
    xn = zscore_apply(ds.x[train_idx], stats)
    sigma = estimate_sigma(xn)
    kernel = KernelSpec(kind="rbf", sigma=sigma)
    val_xn = zscore_apply(ds.x[val_idx], stats)
    return _FoldWork(
        stats=stats,
        xn=xn,
        omega=gram(xn, kernel),
        k_val=cross_gram(xn, val_xn, kernel),
        val_xn=val_xn,
        val_labels=ds.labels[val_idx],
        sigma=sigma,
        laplacians={},
    )


def _fold_laplacian(work: _FoldWork, spec: LaplacianSpec, seed: int):
    if spec.kind == "none":
        return None
    if spec not in work.laplacians:
        work.laplacians[spec] = build_laplacian(spec, work.xn, seed)
    return work.laplacians[spec]


def _threshold(kind: str, train_scores_or_outputs, delta: float) -> float:
    if kind == "vockelm":
        return float(delta * np.mean(train_scores_or_outputs))
    return percentile_threshold(train_scores_or_outputs, delta)


def grid_search(ds: LabeledDataset, kind: str, grid: GridSpec, seed: int,
                plan: SplitPlan | None = None) -> GridSearchResult:
    """Pick hyperparameters by 5-fold cross-validated mean F1.

    Training folds hold targets only; each fold's normalization stats and
    kernel width come from its own training samples. Ties between grid
    points break toward the simpler model: smaller C, then smaller delta,
    then the simpler Laplacian (none before class before intra), then
    smaller k. Grid points whose solve fails are logged and skipped; if all
    of them fail the failure log is raised instead.
    """
    validate_kind(kind)
    fold_plan = make_folds(ds, seed, plan=plan)
    works = [_prepare_fold(ds, f.train_idx, f.val_idx) for f in fold_plan]
    lap_specs = grid.laplacian_specs(kind)

    trace = []
    for lap_spec in lap_specs:
        for c in grid.c_values:
            solved = []
            failure = None
            for work in works:
                try:
                    lap = _fold_laplacian(work, lap_spec, seed)
                    beta = output_weights(kind, work.omega, work.xn, c,
                                          grid.lam, lap, grid.target_value)
                except (linalg.SingularMatrixError, ValueError) as exc:
                    failure = str(exc)
                    break
                train_out = work.omega @ beta
                val_out = work.k_val @ beta
                if kind == "vockelm":
                    train_basis = train_out
                else:
                    train_basis = deviation_scores(kind, train_out, work.xn,
                                                   grid.target_value)
                val_scores = deviation_scores(kind, val_out, work.val_xn,
                                              grid.target_value)
                solved.append((train_basis, val_scores, work.val_labels))
            for delta in grid.delta_values:
                hyper = HyperParams(c=c, lam=grid.lam, delta=delta,
                                    laplacian=lap_spec,
                                    target_value=grid.target_value)
                if failure is not None:
                    trace.append(TraceEntry(hyper, None, None, failure))
                    continue
                fold_f1 = []
                for train_basis, val_scores, val_labels in solved:
                    theta = _threshold(kind, train_basis, delta)
                    predicted = np.where(val_scores <= theta, 1, -1)
                    report = metrics(Confusion.from_labels(val_labels, predicted))
                    fold_f1.append(report.f1)
                trace.append(TraceEntry(hyper, tuple(fold_f1),
                                        float(np.mean(fold_f1)), None))

    usable = [entry for entry in trace if entry.error is None]
    if not usable:
        raise GridSearchError([entry.error for entry in trace])

    def parsimony_key(entry: TraceEntry):
        lap = entry.hyper.laplacian
        return (
            -entry.mean_f1,
            entry.hyper.c,
            entry.hyper.delta,
            LAPLACIAN_KINDS.index(lap.kind),
            lap.k,
        )

    best_entry = min(usable, key=parsimony_key)
    return GridSearchResult(
        kind=kind,
        best=best_entry.hyper,
        best_score=best_entry.mean_f1,
        trace=tuple(trace),
        folds=fold_plan,
        fold_sigmas=tuple(work.sigma for work in works),
        fold_stats=tuple(work.stats for work in works),
    )


@dataclass(frozen=True)
class BenchmarkCell:
    """One (dataset, classifier, seed) outcome of the benchmark protocol."""

    dataset: str
    kind: str
    seed: int
    hyper: HyperParams | None
    report: EvalReport | None
    cv_score: float | None
    fit_seconds: float | None
    error: str | None


class DeltaSweepRow(NamedTuple):
    kind: str
    dataset: str
    delta: float
    f1: float


@dataclass(frozen=True)
class BenchmarkResult:
    cells: tuple
    delta_rows: tuple
    dataset_names: tuple
    kinds: tuple
    seeds: tuple
    eta_f1: dict  # classifier kind -> mean over datasets of median-over-seeds F1
    dataset_f1: dict  # (kind, dataset) -> median-over-seeds F1


def _refit_on_pool(ds: LabeledDataset, plan: SplitPlan, kind: str,
                   hyper: HyperParams, seed: int):
    pool_targets = plan.cv_pool[ds.labels[plan.cv_pool] == 1]
    raw = ds.x[pool_targets]
    started = time.perf_counter()
    stats = zscore_fit(raw)
    xn = zscore_apply(raw, stats)
    kernel = KernelSpec(kind="rbf", sigma=estimate_sigma(xn))
    model = fit(kind, xn, hyper, kernel, seed=seed)
    elapsed = time.perf_counter() - started
    return replace_norm(model, stats), elapsed


def _cell_delta_rows(model: TrainedModel, ds: LabeledDataset, plan: SplitPlan,
                     grid: GridSpec):
    """Test-set F1 at every grid delta, reusing the refit model's weights.

    Only the threshold depends on delta, so the solve from the refit is
    shared across the sweep.
    """
    test_xn = zscore_apply(ds.x[plan.test], model.norm)
    test_labels = ds.labels[plan.test]
    test_out = cross_gram(model.train_x, test_xn, model.kernel) @ model.beta
    test_scores = deviation_scores(model.kind, test_out, test_xn,
                                   model.hyper.target_value)
    train_out = gram(model.train_x, model.kernel) @ model.beta
    if model.kind == "vockelm":
        train_basis = train_out
    else:
        train_basis = deviation_scores(model.kind, train_out, model.train_x,
                                       model.hyper.target_value)
    rows = []
    for delta in grid.delta_values:
        theta = _threshold(model.kind, train_basis, delta)
        predicted = np.where(test_scores <= theta, 1, -1)
        report = metrics(Confusion.from_labels(test_labels, predicted))
        rows.append((float(delta), report.f1))
    return rows


def run_benchmark(datasets, kinds=KINDS, grid: GridSpec | None = None,
                  seeds=(0,)) -> BenchmarkResult:
    """Run the full split / grid search / refit / test protocol.

    Per (dataset, classifier, seed): stratified 80/20 split, grid search on
    the 80% pool, refit on all pool targets with the winning
    hyperparameters, and evaluation on the 20% test split. Failures are
    recorded in their cell rather than aborting the run. With several seeds
    the per-dataset F1 is the median over seeds; eta_f1 averages those over
    datasets.
    """
    grid = grid if grid is not None else GridSpec()
    kinds = tuple(validate_kind(k) for k in kinds)
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    names = []
    for ds in datasets:
        if ds.name in names:
            raise ValueError(f"duplicate dataset name {ds.name!r} in benchmark input")
        names.append(ds.name)
    if not names:
        raise ValueError("need at least one dataset")

    cells = []
    sweep_acc = {}  # (kind, dataset, delta) -> list of per-seed f1
    for ds in datasets:
        for kind in kinds:
            for seed in seeds:
                try:
                    plan = split_80_20(ds, seed)
                    search = grid_search(ds, kind, grid, seed, plan=plan)
                    model, fit_seconds = _refit_on_pool(ds, plan, kind,
                                                        search.best, seed)
                    predicted = [p.label for p in predict(model, ds.x[plan.test])]
                    report = metrics(Confusion.from_labels(ds.labels[plan.test],
                                                           predicted))
                    for delta, f1 in _cell_delta_rows(model, ds, plan, grid):
                        sweep_acc.setdefault((kind, ds.name, delta), []).append(f1)
                except (GridSearchError, linalg.SingularMatrixError, ValueError) as exc:
                    cells.append(BenchmarkCell(ds.name, kind, seed, None, None,
                                               None, None, str(exc)))
                    continue
                cells.append(BenchmarkCell(
                    dataset=ds.name,
                    kind=kind,
                    seed=seed,
                    hyper=search.best,
                    report=report,
                    cv_score=search.best_score,
                    fit_seconds=fit_seconds,
                    error=None,
                ))

    dataset_f1 = {}
    for kind in kinds:
        for name in names:
            scores = [c.report.f1 for c in cells
                      if c.kind == kind and c.dataset == name and c.error is None]
            if scores:
                dataset_f1[(kind, name)] = float(np.median(scores))
    eta = {}
    for kind in kinds:
        per_dataset = [dataset_f1[(kind, name)] for name in names
                       if (kind, name) in dataset_f1]
        if per_dataset:
            eta[kind] = float(np.mean(per_dataset))

    delta_rows = []
    for kind in kinds:
        for name in names:
            for delta in grid.delta_values:
                scores = sweep_acc.get((kind, name, float(delta)))
                if scores:
                    delta_rows.append(DeltaSweepRow(kind, name, float(delta),
                                                    float(np.median(scores))))

    if all(cell.error is not None for cell in cells):
        raise GridSearchError([cell.error for cell in cells])

    return BenchmarkResult(
        cells=tuple(cells),
        delta_rows=tuple(delta_rows),
        dataset_names=tuple(names),
        kinds=kinds,
        seeds=seeds,
        eta_f1=eta,
        dataset_f1=dataset_f1,
    )
