"""Dataset ingestion, normalization and split/fold planning.

Datasets are plain CSV files with one label column; every row whose label
equals the chosen target label becomes a positive (+1) sample, everything
else an outlier (-1). Only target samples are ever used to fit a model; the
split and fold planners keep outliers on the evaluation side.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import as_matrix

N_FOLDS = 5
TEST_FRACTION = 0.2


@dataclass(frozen=True)
class LabeledDataset:
    """Feature matrix plus +1/-1 labels (target vs outlier)."""

    x: np.ndarray
    labels: np.ndarray
    name: str = "dataset"
    feature_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.x.shape[0] != self.labels.shape[0]:
            raise ValueError("label count does not match sample count")
        if not np.all(np.isin(self.labels, (-1, 1))):
            raise ValueError("labels must be +1 (target) or -1 (outlier)")
        if not np.any(self.labels == 1):
            raise ValueError(f"dataset {self.name!r} has no target samples")

    @property
    def n_samples(self) -> int:
        return self.x.shape[0]

    @property
    def n_features(self) -> int:
        return self.x.shape[1]

    @property
    def target_indices(self) -> np.ndarray:
        return np.nonzero(self.labels == 1)[0]

    @property
    def outlier_indices(self) -> np.ndarray:
        return np.nonzero(self.labels == -1)[0]


@dataclass(frozen=True)
class NormStats:
    """Per-feature location/scale for z-score normalization."""

    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def identity(cls, d: int) -> "NormStats":
        return cls(mean=np.zeros(d), std=np.ones(d))


@dataclass(frozen=True)
class SplitPlan:
    """Stratified cross-validation pool vs held-out test indices."""

    cv_pool: np.ndarray
    test: np.ndarray
    seed: int


@dataclass(frozen=True)
class Fold:
    train_idx: np.ndarray  # target samples only
    val_idx: np.ndarray  # held-out targets plus this fold's outliers


@dataclass(frozen=True)
class FoldPlan:
    folds: tuple[Fold, ...]
    seed: int

    def __iter__(self):
        return iter(self.folds)

    def __len__(self):
        return len(self.folds)


def subset(ds: LabeledDataset, indices: np.ndarray, name: str | None = None) -> LabeledDataset:
    indices = np.asarray(indices)
    return LabeledDataset(
        x=ds.x[indices],
        labels=ds.labels[indices],
        name=name if name is not None else ds.name,
        feature_names=ds.feature_names,
    )


def _resolve_label_column(label_column, header: list[str] | None, n_cols: int) -> int:
    try:
        idx = int(label_column)
    except (TypeError, ValueError):
        if header is None:
            raise ValueError(
                f"label column {label_column!r} is not an index and the file has no header"
            )
        if label_column not in header:
            raise ValueError(
                f"label column {label_column!r} not found in header {header}"
            )
        return header.index(label_column)
    if idx < 0:
        idx += n_cols
    if not 0 <= idx < n_cols:
        raise ValueError(
            f"label column index {label_column} out of range for {n_cols} columns"
        )
    return idx


def _read_rows(path: Path, has_header: bool):
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows:
        raise ValueError(f"{path}: file is empty")
    header = None
    if has_header:
        header = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: no data rows after header")
    return header, rows


def _parse_features(path: Path, rows, n_cols: int, label_idx: int | None):
    features, raw_labels = [], []
    for r, row in enumerate(rows, start=1):
        if len(row) != n_cols:
            raise ValueError(
                f"{path}: data row {r} has {len(row)} cells, expected {n_cols}"
            )
        if label_idx is not None:
            raw_labels.append(row[label_idx].strip())
        feat = []
        for c, cell in enumerate(row, start=1):
            if label_idx is not None and c - 1 == label_idx:
                continue
            try:
                feat.append(float(cell))
            except ValueError:
                raise ValueError(
                    f"{path}: cannot parse {cell!r} as a number at data row {r}, column {c}"
                ) from None
        features.append(feat)
    return features, raw_labels


def load_csv(
    path,
    label_column,
    target_label: str,
    has_header: bool = True,
    name: str | None = None,
) -> LabeledDataset:
    """Read a labeled CSV into a dataset.

    ``label_column`` may be a header name or a (possibly negative) column
    index; every other column must parse as a real number. Rows whose label
    cell equals ``target_label`` become +1, all others -1.
    """
    path = Path(path)
    header, rows = _read_rows(path, has_header)
    n_cols = len(rows[0])
    label_idx = _resolve_label_column(label_column, header, n_cols)
    features, raw_labels = _parse_features(path, rows, n_cols, label_idx)
    labels = [1 if raw == target_label else -1 for raw in raw_labels]
    feature_names = None
    if header is not None:
        feature_names = tuple(h for i, h in enumerate(header) if i != label_idx)
    x = as_matrix(features, name=str(path))
    return LabeledDataset(
        x=x,
        labels=np.asarray(labels, dtype=int),
        name=name if name is not None else path.stem,
        feature_names=feature_names,
    )


def load_features_csv(path, label_column=None, has_header: bool = True) -> np.ndarray:
    """Read a CSV of numeric features, dropping ``label_column`` if given.

    For scoring unlabeled data: unlike ``load_csv`` it needs no labels and
    imposes no target-class requirement.
    """
    path = Path(path)
    header, rows = _read_rows(path, has_header)
    n_cols = len(rows[0])
    label_idx = None
    if label_column is not None:
        label_idx = _resolve_label_column(label_column, header, n_cols)
    features, _ = _parse_features(path, rows, n_cols, label_idx)
    return as_matrix(features, name=str(path))


def zscore_fit(x: np.ndarray) -> NormStats:
    """Per-feature mean and population standard deviation.

    Exactly constant columns get their mean pinned to the constant and their
    scale repaired to 1, so they normalize to exact zeros instead of noise.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise ValueError("z-score stats need at least 2 samples")
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    constant = np.ptp(x, axis=0) == 0
    mean = np.where(constant, x[0], mean)
    std = np.where(constant | (std == 0), 1.0, std)
    return NormStats(mean=mean, std=std)


def zscore_apply(x: np.ndarray, stats: NormStats) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[1] != stats.mean.shape[0]:
        raise ValueError(
            f"feature count mismatch: data has {x.shape[1]} columns, "
            f"stats expect {stats.mean.shape[0]}"
        )
    return (x - stats.mean) / stats.std


def _stratified_two_way(indices: np.ndarray, test_count: int, rng) -> tuple[np.ndarray, np.ndarray]:
    order = rng.permutation(indices)
    return np.sort(order[test_count:]), np.sort(order[:test_count])


def split_80_20(ds: LabeledDataset, seed: int) -> SplitPlan:
    """Stratified 80/20 pool/test split, shuffled under ``seed``.

    Test counts are floored per class, so tiny classes stay in the pool
    rather than losing their only samples to the test side.
    """
    if ds.n_samples < 5:
        raise ValueError(f"need at least 5 samples to split, got {ds.n_samples}")
    rng = np.random.default_rng([seed, 0])
    pool_parts, test_parts = [], []
    for cls_idx in (ds.target_indices, ds.outlier_indices):
        if cls_idx.size == 0:
            continue
        n_test = int(np.floor(TEST_FRACTION * cls_idx.size))
        pool, test = _stratified_two_way(cls_idx, n_test, rng)
        if cls_idx.size >= 5 and (pool.size == 0 or test.size == 0):
            raise AssertionError("stratified split emptied a class with >= 5 samples")
        pool_parts.append(pool)
        test_parts.append(test)
    return SplitPlan(
        cv_pool=np.sort(np.concatenate(pool_parts)),
        test=np.sort(np.concatenate(test_parts)) if test_parts else np.array([], dtype=int),
        seed=seed,
    )


def make_folds(ds: LabeledDataset, seed: int, plan: SplitPlan | None = None) -> FoldPlan:
    """Partition pool targets and outliers into N_FOLDS parallel folds.

    Fold f trains on the other folds' targets and validates on its own
    targets plus its own outliers; training indices never contain outliers.
    When ``plan`` is given the folding is restricted to its cv_pool.
    """
    pool = plan.cv_pool if plan is not None else np.arange(ds.n_samples)
    pool_labels = ds.labels[pool]
    targets = pool[pool_labels == 1]
    outliers = pool[pool_labels == -1]
    if targets.size < N_FOLDS:
        raise ValueError(
            f"need at least {N_FOLDS} target samples for {N_FOLDS}-fold CV, got {targets.size}"
        )
    rng = np.random.default_rng([seed, 1])
    target_folds = np.array_split(rng.permutation(targets), N_FOLDS)
    outlier_folds = np.array_split(rng.permutation(outliers), N_FOLDS)
    folds = []
    for f in range(N_FOLDS):
        train = np.sort(np.concatenate([target_folds[g] for g in range(N_FOLDS) if g != f]))
        val = np.sort(np.concatenate([target_folds[f], outlier_folds[f]]))
        folds.append(Fold(train_idx=train, val_idx=val.astype(int)))
    return FoldPlan(folds=tuple(folds), seed=seed)


def load_manifest(path) -> list[LabeledDataset]:
    """Load the datasets listed in a JSON manifest.

    Each entry carries name, path, label_column, target_label and an
    optional has_header flag; relative paths resolve against the manifest's
    own directory.
    """
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        entries = json.load(fh)
    if not isinstance(entries, list) or not entries:
        raise ValueError(f"{path}: manifest must be a non-empty JSON list")
    datasets = []
    for i, entry in enumerate(entries):
        try:
            csv_path = Path(entry["path"])
            if not csv_path.is_absolute():
                csv_path = path.parent / csv_path
            datasets.append(
                load_csv(
                    csv_path,
                    label_column=entry["label_column"],
                    target_label=str(entry["target_label"]),
                    has_header=entry.get("has_header", True),
                    name=entry.get("name"),
                )
            )
        except KeyError as exc:
            raise ValueError(f"{path}: manifest entry {i} is missing field {exc}") from None
    return datasets
