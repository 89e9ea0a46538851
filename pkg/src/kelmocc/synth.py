"""Synthetic one-class datasets: Gaussian target clouds ringed by outliers.

Targets are drawn from unit-variance Gaussian clouds (optionally around
several centers); outliers sit on a spherical shell around the origin whose
inner radius is the requested separation, in units of the per-axis target
standard deviation. Everything is a pure function of the seed, so the same
call produces the same samples and the same CSV bytes.
"""

from __future__ import annotations

import csv
import os

import numpy as np

from .data import LabeledDataset

SHELL_WIDTH = 2.0


def make_cloud_shell(n_target: int, n_outlier: int, n_features: int,
                     separation: float, seed=0, centers=None,
                     name: str = "synthetic") -> LabeledDataset:
    """Generate a labeled cloud-plus-shell dataset.

    ``centers`` may be an (m, d) array of cluster centers; target rows cycle
    through them round-robin with unit Gaussian noise, which keeps the
    clusters the same size under every seed. Outliers get a uniform radius
    in [separation, separation + 2] and a uniformly random direction.
    """
    if n_target < 1:
        raise ValueError(f"need at least one target sample, got {n_target}")
    if n_outlier < 0:
        raise ValueError(f"outlier count must be non-negative, got {n_outlier}")
    if n_features < 1:
        raise ValueError(f"need at least one feature, got {n_features}")
    if not separation > 0:
        raise ValueError(f"separation must be positive, got {separation!r}")
    rng = np.random.default_rng(seed)
    targets = rng.standard_normal((n_target, n_features))
    if centers is not None:
        centers = np.asarray(centers, dtype=float)
        if centers.ndim != 2 or centers.shape[1] != n_features:
            raise ValueError(
                f"centers must be an (m, {n_features}) array, got shape {centers.shape}"
            )
        targets += centers[np.arange(n_target) % centers.shape[0]]
    directions = rng.standard_normal((n_outlier, n_features))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    # a zero draw has probability zero but would divide by zero; pin it to an axis
    degenerate = norms[:, 0] == 0
    directions[degenerate] = 0.0
    directions[degenerate, 0] = 1.0
    norms[degenerate] = 1.0
    radii = rng.uniform(separation, separation + SHELL_WIDTH, n_outlier)
    outliers = directions / norms * radii[:, None]
    x = np.vstack([targets, outliers])
    labels = np.concatenate([
        np.ones(n_target, dtype=int),
        -np.ones(n_outlier, dtype=int),
    ])
    return LabeledDataset(x=x, labels=labels, name=name)


def axis_centers(n_centers: int, n_features: int, spread: float) -> np.ndarray:
    """Cluster centers at +/- spread along the first coordinate axes.

    Centers land on axis k at sign (-1)^k, so consecutive centers spread
    into different directions and the overall mean stays near the origin.
    """
    if not 1 <= n_centers <= 2 * n_features:
        raise ValueError(
            f"need 1 <= n_centers <= {2 * n_features} for {n_features} features"
        )
    centers = np.zeros((n_centers, n_features))
    for i in range(n_centers):
        axis = i // 2
        sign = 1.0 if i % 2 == 0 else -1.0
        centers[i, axis] = sign * spread
    return centers


def write_csv(ds: LabeledDataset, path: str | os.PathLike) -> None:
    """Write the dataset as a headed CSV with the label in the last column."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([f"f{j + 1}" for j in range(ds.n_features)] + ["label"])
        for row, label in zip(ds.x, ds.labels):
            writer.writerow([repr(float(v)) for v in row] + [str(int(label))])


def default_suite(seed: int = 0) -> list[LabeledDataset]:
    """The five-dataset synthetic benchmark suite.

    A spread of dimensions and cluster counts: single clouds in two, five
    and eight dimensions plus a two-cluster and a three-cluster set.
    Separations are wide enough that shell outliers are cleanly separable,
    so suite scores measure the protocol rather than raw task difficulty.
    Each dataset derives its own RNG stream from (seed, index) so suites
    for different seeds are fully independent draws.
    """
    specs = [
        dict(name="orb5", n_target=150, n_outlier=60, n_features=5,
             separation=7.0, centers=None),
        dict(name="dart2", n_target=120, n_outlier=60, n_features=2,
             separation=6.0, centers=None),
        dict(name="twin4", n_target=160, n_outlier=64, n_features=4,
             separation=8.0, centers=axis_centers(2, 4, 3.0)),
        dict(name="trio3", n_target=150, n_outlier=60, n_features=3,
             separation=8.0, centers=axis_centers(3, 3, 3.0)),
        dict(name="slab8", n_target=200, n_outlier=80, n_features=8,
             separation=7.0, centers=None),
    ]
    suite = []
    for index, spec in enumerate(specs):
        suite.append(make_cloud_shell(
            spec["n_target"], spec["n_outlier"], spec["n_features"],
            spec["separation"], seed=[seed, index], centers=spec["centers"],
            name=spec["name"],
        ))
    return suite
