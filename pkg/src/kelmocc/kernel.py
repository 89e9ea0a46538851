"""RBF kernel evaluation and Gram matrix construction.

The kernel width sigma defaults to the mean Euclidean distance over all
unordered pairs of distinct training rows, which keeps the Gram matrix well
scaled without per-dataset tuning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

KERNEL_KINDS = ("rbf",)


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus its width parameter."""

    kind: str = "rbf"
    sigma: float = 1.0

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}; expected one of {KERNEL_KINDS}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be a positive finite number, got {self.sigma!r}")


def rbf(x, y, sigma: float) -> float:
    """Gaussian similarity exp(-||x - y||^2 / (2 sigma^2)) of two vectors."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError(f"vector length mismatch: {x.shape[0]} vs {y.shape[0]}")
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be a positive finite number, got {sigma!r}")
    sq = float(np.sum((x - y) ** 2))
    return math.exp(-sq / (2.0 * sigma * sigma))


def estimate_sigma(x: np.ndarray) -> float:
    """Mean Euclidean distance over the N(N-1)/2 unordered pairs of rows.

    Self distances are excluded; a dataset whose rows are all identical has
    no usable scale and raises.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise ValueError("sigma estimation needs at least 2 samples")
    sigma = float(pdist(x, metric="euclidean").mean())
    if sigma == 0.0:
        raise ValueError("all samples are identical; kernel width would be zero")
    return sigma


def gram(x: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """N x N matrix of pairwise kernel values over the rows of ``x``.

    Built from condensed pairwise distances, so the result is exactly
    symmetric with an exactly-one diagonal.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError("gram expects an N x d sample matrix")
    sq = squareform(pdist(x, metric="sqeuclidean"))
    return np.exp(-sq / (2.0 * spec.sigma**2))


def cross_gram(train: np.ndarray, query: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """T x N matrix of kernel values between query rows and training rows."""
    train = np.asarray(train, dtype=float)
    query = np.asarray(query, dtype=float)
    if train.ndim != 2 or query.ndim != 2:
        raise ValueError("cross_gram expects 2-D sample matrices")
    if train.shape[1] != query.shape[1]:
        raise ValueError(
            f"feature count mismatch: train has {train.shape[1]} columns, "
            f"query has {query.shape[1]}"
        )
    sq = cdist(query, train, metric="sqeuclidean")
    return np.exp(-sq / (2.0 * spec.sigma**2))
