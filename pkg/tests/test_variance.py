"""Variance-penalty matrices and the k-means clustering behind them."""

import numpy as np
import pytest

from kelmocc.variance import (
    LaplacianSpec,
    build_laplacian,
    class_variance_laplacian,
    intra_class_laplacian,
    kmeans,
)

from oracles import best_two_cluster_wcss, centered_scatter, partition_wcss, weighted_scatter


def blobs(seed=0):
    # two tight groups far apart, so the optimal 2-clustering is unambiguous
    rng = np.random.default_rng(seed)
    a = rng.normal(scale=0.3, size=(6, 2))
    b = rng.normal(scale=0.3, size=(5, 2)) + 20.0
    return np.vstack([a, b])


# ---------------------------------------------------------------- laplacians


def test_class_laplacian_realizes_the_centered_scatter():
    # h^T M h must equal the per-sample scatter about the mean
    n = 13
    h = np.random.default_rng(1).normal(size=(n, 4))
    m = class_variance_laplacian(n)
    assert np.allclose(h.T @ m @ h, centered_scatter(h), rtol=0, atol=1e-10)


def test_class_laplacian_shape_and_symmetry():
    m = class_variance_laplacian(7)
    assert m.shape == (7, 7)
    assert np.array_equal(m, m.T)


def test_class_laplacian_annihilates_constant_vectors():
    m = class_variance_laplacian(9)
    assert np.allclose(m @ np.ones(9), 0.0, atol=1e-15)


@pytest.mark.parametrize("kind,k", [("class", 1), ("intra", 1), ("intra", 3)])
def test_laplacians_are_positive_semidefinite(kind, k):
    x = blobs(seed=2)
    m = build_laplacian(LaplacianSpec(kind=kind, k=k), x, seed=0)
    assert np.allclose(m, m.T, rtol=0, atol=1e-14)
    assert np.linalg.eigvalsh(m).min() >= -1e-10


def test_intra_laplacian_realizes_the_weighted_scatter():
    x = blobs(seed=3)
    n = x.shape[0]
    assignment = kmeans(x, 2, seed=0)
    m = intra_class_laplacian(assignment, n)
    h = np.random.default_rng(4).normal(size=(n, 3))
    want = weighted_scatter(h, assignment.labels, assignment.counts)
    assert np.allclose(h.T @ m @ h, want, rtol=0, atol=1e-10)


def test_intra_laplacian_annihilates_constant_vectors():
    x = blobs(seed=5)
    m = build_laplacian(LaplacianSpec(kind="intra", k=3), x, seed=0)
    assert np.allclose(m @ np.ones(x.shape[0]), 0.0, atol=1e-12)


def test_single_cluster_intra_equals_scaled_class_laplacian_exactly():
    x = np.random.default_rng(6).normal(size=(17, 3))
    intra = build_laplacian(LaplacianSpec(kind="intra", k=1), x, seed=0)
    assert np.array_equal(intra, 17 * class_variance_laplacian(17))


def test_none_laplacian_is_the_zero_matrix():
    x = np.ones((5, 2))
    m = build_laplacian(LaplacianSpec(), x, seed=0)
    assert np.array_equal(m, np.zeros((5, 5)))


def test_laplacian_spec_validation():
    with pytest.raises(ValueError, match="laplacian kind"):
        LaplacianSpec(kind="graph")
    with pytest.raises(ValueError, match="k >= 1"):
        LaplacianSpec(kind="intra", k=0)


# ------------------------------------------------------------------- kmeans


def test_kmeans_is_deterministic_under_a_seed():
    x = np.random.default_rng(7).normal(size=(30, 3))
    a = kmeans(x, 4, seed=11)
    b = kmeans(x, 4, seed=11)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.centroids, b.centroids)
    assert np.array_equal(a.counts, b.counts)


def test_kmeans_recovers_well_separated_groups():
    x = blobs(seed=8)
    assignment = kmeans(x, 2, seed=0)
    first = assignment.labels[:6]
    second = assignment.labels[6:]
    assert len(set(first)) == 1
    assert len(set(second)) == 1
    assert first[0] != second[0]
    assert sorted(assignment.counts) == [5, 6]


def test_kmeans_reaches_the_exhaustive_two_cluster_optimum():
    x = blobs(seed=9)
    assignment = kmeans(x, 2, seed=0)
    members = [np.nonzero(assignment.labels == p)[0] for p in range(2)]
    got = partition_wcss(x, members)
    assert np.isclose(got, best_two_cluster_wcss(x), rtol=1e-10)


def test_kmeans_centroids_are_cluster_means():
    x = np.random.default_rng(10).normal(size=(20, 2))
    assignment = kmeans(x, 3, seed=1)
    for p in range(3):
        pts = x[assignment.labels == p]
        assert np.allclose(assignment.centroids[p], pts.mean(axis=0), atol=1e-12)


def test_kmeans_with_k_equal_n_leaves_no_cluster_empty():
    x = np.random.default_rng(11).normal(size=(6, 2))
    assignment = kmeans(x, 6, seed=0)
    assert np.array_equal(np.sort(assignment.labels), np.arange(6))
    assert np.all(assignment.counts == 1)


def test_kmeans_survives_duplicate_rows():
    # duplicated locations force centroid collisions and the repair path
    base = np.array([[0.0, 0.0], [5.0, 5.0], [9.0, 0.0]])
    x = np.repeat(base, 2, axis=0)
    assignment = kmeans(x, 4, seed=0)
    assert np.all(assignment.counts >= 1)
    assert assignment.counts.sum() == 6
    assert np.isfinite(assignment.centroids).all()


def test_kmeans_validation():
    x = np.ones((4, 2))
    with pytest.raises(ValueError, match="positive"):
        kmeans(x, 0, seed=0)
    with pytest.raises(ValueError, match="cannot form"):
        kmeans(x, 5, seed=0)
