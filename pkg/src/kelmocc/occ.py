"""The four kernel-ELM one-class classifiers behind one fit/predict interface.

All four share the same skeleton: build the RBF Gram matrix over the target
training samples, solve one regularized linear system for the output
weights, score samples by how far the network output deviates, and accept a
sample when its score stays below a threshold learned on the training set.

They differ along two axes:

* output target: the boundary classifiers (``ockelm``, ``vockelm``) regress
  every sample onto one fixed scalar and score by deviation from it, while
  the reconstruction classifiers (``aakelm``, ``vaakelm``) regress samples
  onto themselves and score by squared reconstruction error;
* variance embedding: the ``v``-variants add a Laplacian penalty term to the
  system matrix that shrinks the spread of the training outputs.

System matrices, per classifier (Omega is the Gram matrix, M the variance
Laplacian, C and lam the regularization weights):

    ockelm / aakelm:    Omega + (1/C) I
    vockelm / vaakelm:  Omega + (1/C) M Omega + (lam/C) I

Right-hand side: ``target_value``-filled column for boundary classifiers,
the training matrix itself for reconstruction classifiers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .data import NormStats, zscore_apply, zscore_fit
from .kernel import KernelSpec, cross_gram, estimate_sigma, gram
from .variance import LaplacianSpec, build_laplacian

KINDS = ("ockelm", "aakelm", "vockelm", "vaakelm")
BOUNDARY_KINDS = ("ockelm", "vockelm")
RECONSTRUCTION_KINDS = ("aakelm", "vaakelm")
VARIANCE_KINDS = ("vockelm", "vaakelm")


def validate_kind(kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown classifier kind {kind!r}; expected one of {KINDS}")
    return kind


@dataclass(frozen=True)
class HyperParams:
    """Training knobs shared by the classifier family.

    ``c`` trades the weight norm against the training error, ``lam`` weighs
    the identity part of the variance penalty, ``delta`` is the fraction of
    training samples the threshold is allowed to dismiss, and
    ``target_value`` is the scalar the boundary classifiers regress onto.
    """

    c: float = 1.0
    lam: float = 1.0
    delta: float = 0.1
    laplacian: LaplacianSpec = LaplacianSpec()
    target_value: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise ValueError(f"c must be positive and finite, got {self.c!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"lambda must be positive and finite, got {self.lam!r}")
        if not (math.isfinite(self.delta) and 0 < self.delta <= 1):
            raise ValueError(f"delta must lie in (0, 1], got {self.delta!r}")
        if not math.isfinite(self.target_value):
            raise ValueError("target_value must be finite")


@dataclass(frozen=True)
class TrainedModel:
    """A fitted one-class classifier, self-contained for prediction."""

    kind: str
    train_x: np.ndarray  # normalized training samples, N x d
    beta: np.ndarray  # output weights, N x d or N x 1
    theta: float
    kernel: KernelSpec
    norm: NormStats
    hyper: HyperParams

    def __post_init__(self):
        if self.beta.shape[0] != self.train_x.shape[0]:
            raise ValueError("output weight rows must match training sample count")

    @property
    def n_train(self) -> int:
        return self.train_x.shape[0]

    @property
    def n_features(self) -> int:
        return self.train_x.shape[1]


class Prediction(NamedTuple):
    score: float
    label: int  # +1 target, -1 outlier


def percentile_threshold(losses, delta: float) -> float:
    """Threshold at the floor(delta * N)-th largest loss (1-based, clamped).

    With delta too small for N the index clamps to the largest loss, so the
    fitted model rejects none of its own training samples.
    """
    losses = np.asarray(losses, dtype=float).ravel()
    if losses.size == 0:
        raise ValueError("cannot take a threshold over zero losses")
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta!r}")
    descending = np.sort(losses)[::-1]
    index = max(1, math.floor(delta * losses.size))
    return float(descending[index - 1])


def system_matrix(kind: str, omega: np.ndarray, c: float, lam: float,
                  laplacian: np.ndarray | None) -> np.ndarray:
    n = omega.shape[0]
    if kind in VARIANCE_KINDS:
        if laplacian is None:
            raise ValueError(f"{kind} needs a variance Laplacian matrix")
        return omega + (laplacian @ omega) / c + (lam / c) * np.eye(n)
    return omega + np.eye(n) / c


def output_weights(kind: str, omega: np.ndarray, x: np.ndarray, c: float,
                   lam: float, laplacian: np.ndarray | None,
                   target_value: float) -> np.ndarray:
    """Closed-form output-weight solve shared by all four classifiers."""
    validate_kind(kind)
    n = omega.shape[0]
    if kind in BOUNDARY_KINDS:
        rhs = np.full((n, 1), float(target_value))
    else:
        rhs = x
    return linalg.solve(system_matrix(kind, omega, c, lam, laplacian), rhs)


def deviation_scores(kind: str, outputs: np.ndarray, x: np.ndarray,
                     target_value: float) -> np.ndarray:
    """Per-sample deviation of network outputs, on the classifier's scale.

    Boundary classifiers use |output - target| (absolute for ockelm, squared
    for vockelm); reconstruction classifiers use the squared reconstruction
    error against the normalized sample.
    """
    if kind == "ockelm":
        return np.abs(outputs[:, 0] - target_value)
    if kind == "vockelm":
        return (outputs[:, 0] - target_value) ** 2
    return ((outputs - x) ** 2).sum(axis=1)


def fit(kind: str, x: np.ndarray, hyper: HyperParams, kernel: KernelSpec,
        seed: int = 0) -> TrainedModel:
    """Fit one classifier on already-normalized target samples.

    ``x`` must be the normalized N x d training matrix (see ``train`` for
    the raw-data convenience wrapper); ``seed`` only matters when the
    intra-class Laplacian runs k-means. The threshold comes from the
    dismissal-fraction percentile rule, except for ``vockelm`` which uses
    ``delta`` times the mean training output.
    """
    validate_kind(kind)
    x = linalg.as_matrix(x, name="training data")
    if x.shape[0] < 2:
        raise ValueError(f"need at least 2 training samples, got {x.shape[0]}")
    if kind not in VARIANCE_KINDS and hyper.laplacian.kind != "none":
        raise ValueError(
            f"{kind} takes no variance Laplacian; got kind {hyper.laplacian.kind!r}"
        )
    laplacian = None
    if kind in VARIANCE_KINDS:
        laplacian = build_laplacian(hyper.laplacian, x, seed)
    omega = gram(x, kernel)
    beta = output_weights(kind, omega, x, hyper.c, hyper.lam, laplacian,
                          hyper.target_value)
    outputs = omega @ beta
    if kind == "vockelm":
        theta = float(hyper.delta * outputs.mean())
    else:
        scores = deviation_scores(kind, outputs, x, hyper.target_value)
        theta = percentile_threshold(scores, hyper.delta)
    return TrainedModel(
        kind=kind,
        train_x=x,
        beta=beta,
        theta=theta,
        kernel=kernel,
        norm=NormStats.identity(x.shape[1]),
        hyper=hyper,
    )


def train(kind: str, x_raw: np.ndarray, hyper: HyperParams, seed: int = 0) -> TrainedModel:
    """Normalize raw target samples, pick the kernel width, and fit.

    Convenience pipeline around ``fit``: z-score stats and the kernel width
    both come from the given samples, and the stats are stored on the model
    so raw queries normalize themselves at prediction time.
    """
    x_raw = linalg.as_matrix(x_raw, name="training data")
    stats = zscore_fit(x_raw)
    xn = zscore_apply(x_raw, stats)
    kernel = KernelSpec(kind="rbf", sigma=estimate_sigma(xn))
    model = fit(kind, xn, hyper, kernel, seed=seed)
    return replace_norm(model, stats)


def replace_norm(model: TrainedModel, stats: NormStats) -> TrainedModel:
    """Attach the normalization stats that produced the model's train_x."""
    return TrainedModel(
        kind=model.kind,
        train_x=model.train_x,
        beta=model.beta,
        theta=model.theta,
        kernel=model.kernel,
        norm=stats,
        hyper=model.hyper,
    )


def _scores_for_normalized(model: TrainedModel, xn: np.ndarray) -> np.ndarray:
    k = cross_gram(model.train_x, xn, model.kernel)
    outputs = k @ model.beta
    return deviation_scores(model.kind, outputs, xn, model.hyper.target_value)


def training_scores(model: TrainedModel) -> np.ndarray:
    """The model's deviation scores recomputed on its own training samples."""
    return _scores_for_normalized(model, model.train_x)


def predict(model: TrainedModel, query_raw: np.ndarray) -> list[Prediction]:
    """Score raw query rows and label each as target (+1) or outlier (-1).

    A score exactly at the threshold counts as target: the threshold is
    itself a training loss and that sample was meant to be accepted.
    """
    query_raw = linalg.as_matrix(query_raw, name="query data")
    if query_raw.shape[1] != model.n_features:
        raise ValueError(
            f"feature count mismatch: model expects {model.n_features} columns, "
            f"query has {query_raw.shape[1]}"
        )
    xn = zscore_apply(query_raw, model.norm)
    scores = _scores_for_normalized(model, xn)
    return [
        Prediction(score=float(s), label=1 if s <= model.theta else -1)
        for s in scores
    ]


def training_rejection_count(model: TrainedModel) -> int:
    """How many of the model's own training samples score above its threshold.

    Only meaningful for percentile-thresholded classifiers; ``vockelm``
    derives its threshold from the mean output instead and is rejected here.
    """
    if model.kind == "vockelm":
        raise ValueError("training_rejection_count is not defined for vockelm models")
    return int(np.sum(training_scores(model) > model.theta))
