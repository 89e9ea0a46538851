"""Variance-penalty Laplacians and the k-means subclustering behind them.

The variance-embedded classifiers shrink the spread of their training
outputs through an N x N Laplacian built from centering matrices: either one
global centering (class variance) or a subcluster-weighted version of it
(intra-class variance, with subclusters found by k-means).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

LAPLACIAN_KINDS = ("none", "class", "intra")

KMEANS_RESTARTS = 5
KMEANS_MAX_ITER = 100


@dataclass(frozen=True)
class LaplacianSpec:
    """Which variance penalty to embed; ``k`` is used by ``intra`` only.

    ``none`` stands for a zero penalty matrix and exists so the embedded
    classifiers can be reduced exactly to their plain counterparts.
    """

    kind: str = "none"
    k: int = 1

    def __post_init__(self):
        if self.kind not in LAPLACIAN_KINDS:
            raise ValueError(
                f"unknown laplacian kind {self.kind!r}; expected one of {LAPLACIAN_KINDS}"
            )
        if self.kind == "intra" and self.k < 1:
            raise ValueError(f"intra-class laplacian needs k >= 1, got {self.k}")


@dataclass(frozen=True)
class ClusterAssignment:
    """k-means result: per-sample labels, centroids and cluster sizes."""

    labels: np.ndarray  # (n,) ints in [0, k)
    centroids: np.ndarray  # (k, d)
    counts: np.ndarray  # (k,) ints, all positive

    @property
    def n_samples(self) -> int:
        return self.labels.shape[0]

    @property
    def n_clusters(self) -> int:
        return self.centroids.shape[0]


def class_variance_laplacian(n: int) -> np.ndarray:
    """(1/n) (I - ones/n): symmetric, PSD, annihilates the constant vector."""
    if n < 1:
        raise ValueError(f"laplacian size must be positive, got {n}")
    return (np.eye(n) - np.full((n, n), 1.0 / n)) / n


def _centering(n: int) -> np.ndarray:
    return np.eye(n) - np.full((n, n), 1.0 / n)


def intra_class_laplacian(assignment: ClusterAssignment, n: int) -> np.ndarray:
    """Subcluster-weighted centering matrix C diag(w) C.

    C = I - ones/n and w_i is the size of sample i's cluster divided by n.
    With a single cluster every w_i is 1 and the result collapses to C,
    which equals n times class_variance_laplacian(n).
    """
    if assignment.n_samples != n:
        raise ValueError(
            f"assignment covers {assignment.n_samples} samples, expected {n}"
        )
    if assignment.n_clusters == 1:
        # all weights are 1 and C is idempotent, so the product is exactly C
        return n * class_variance_laplacian(n)
    w = assignment.counts[assignment.labels] / n
    c = _centering(n)
    return c @ (w[:, None] * c)


def build_laplacian(spec: LaplacianSpec, x: np.ndarray, seed: int) -> np.ndarray:
    """Materialize the penalty matrix for ``spec`` over the samples ``x``."""
    n = x.shape[0]
    if spec.kind == "none":
        return np.zeros((n, n))
    if spec.kind == "class":
        return class_variance_laplacian(n)
    assignment = kmeans(x, spec.k, seed)
    return intra_class_laplacian(assignment, n)


def _wcss(x: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> float:
    return float(np.sum((x - centroids[labels]) ** 2))


def _lloyd(x: np.ndarray, k: int, rng: np.random.Generator):
    """One Lloyd run from a random-row initialization.

    Returns (labels, centroids, objective history). Ties in the nearest
    centroid go to the lowest cluster index; an empty cluster steals the
    sample currently farthest from its own centroid.
    """
    n = x.shape[0]
    centroids = x[rng.choice(n, size=k, replace=False)].copy()
    labels = np.full(n, -1)
    history = []
    for _ in range(KMEANS_MAX_ITER):
        dist = cdist(x, centroids, metric="sqeuclidean")
        new_labels = np.argmin(dist, axis=1)
        while True:
            counts = np.bincount(new_labels, minlength=k)
            empties = np.nonzero(counts == 0)[0]
            if empties.size == 0:
                break
            empty = int(empties[0])
            own = dist[np.arange(n), new_labels]
            # never steal a cluster's only member, that would just move the hole
            own[counts[new_labels] == 1] = -np.inf
            thief = int(np.argmax(own))
            new_labels[thief] = empty
            centroids[empty] = x[thief]
            dist[:, empty] = cdist(x, centroids[empty : empty + 1], "sqeuclidean")[:, 0]
        converged = np.array_equal(new_labels, labels)
        labels = new_labels
        for p in range(k):
            centroids[p] = x[labels == p].mean(axis=0)
        history.append(_wcss(x, labels, centroids))
        if converged:
            break
    return labels, centroids, history


def kmeans(x: np.ndarray, k: int, seed: int) -> ClusterAssignment:
    """Deterministic k-means: best of KMEANS_RESTARTS Lloyd runs under ``seed``."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if k < 1:
        raise ValueError(f"cluster count must be positive, got {k}")
    if k > n:
        raise ValueError(f"cannot form {k} clusters from {n} samples")
    rng = np.random.default_rng(seed)
    best = None
    best_obj = np.inf
    for _ in range(KMEANS_RESTARTS):
        labels, centroids, history = _lloyd(x, k, rng)
        if history[-1] < best_obj:
            best_obj = history[-1]
            best = (labels, centroids)
    labels, centroids = best
    counts = np.bincount(labels, minlength=k)
    assert counts.min() > 0, "k-means produced an empty cluster"
    return ClusterAssignment(labels=labels, centroids=centroids, counts=counts)
