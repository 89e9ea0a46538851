"""Slow, independent reference implementations used to cross-check fast paths.

Everything here favors the most literal formulation available: cofactor
determinants, explicit double loops, exhaustive enumeration. None of it
scales to real data sizes, which is the point; these routines share no code
with the package, so agreement is evidence rather than tautology.
"""

import math

import numpy as np


def det_laplace(a):
    """Determinant by recursive cofactor expansion along the first row."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += ((-1.0) ** j) * a[0, j] * det_laplace(minor)
    return total


def adjugate_inverse(a):
    """Matrix inverse via the cofactor adjugate. Fine up to 5x5 or so."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    det = det_laplace(a)
    if n == 1:
        return np.array([[1.0 / a[0, 0]]])
    cof = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(a, i, axis=0), j, axis=1)
            cof[i, j] = ((-1.0) ** (i + j)) * det_laplace(minor)
    return cof.T / det


def matmul_loops(a, b):
    """Triple-loop matrix product."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros((a.shape[0], b.shape[1]))
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = 0.0
            for k in range(a.shape[1]):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def solve_adjugate(a, b):
    """Solve ``a x = b`` through the explicit adjugate inverse."""
    inv = adjugate_inverse(a)
    b = np.asarray(b, dtype=float)
    if b.ndim == 1:
        return matmul_loops(inv, b.reshape(-1, 1))[:, 0]
    return matmul_loops(inv, b)


def rbf_scalar(x, y, sigma):
    """Gaussian kernel of two vectors, accumulated feature by feature."""
    sq = 0.0
    for xi, yi in zip(x, y):
        sq += (float(xi) - float(yi)) ** 2
    return math.exp(-sq / (2.0 * sigma * sigma))


def gram_loops(x, sigma):
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = rbf_scalar(x[i], x[j], sigma)
    return out


def cross_gram_loops(train, query, sigma):
    train = np.asarray(train, dtype=float)
    query = np.asarray(query, dtype=float)
    out = np.empty((query.shape[0], train.shape[0]))
    for i in range(query.shape[0]):
        for j in range(train.shape[0]):
            out[i, j] = rbf_scalar(query[i], train[j], sigma)
    return out


def mean_pairwise_distance(x):
    """Mean Euclidean distance over the unordered pairs, by double loop."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    total = 0.0
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += math.sqrt(float(np.sum((x[i] - x[j]) ** 2)))
            count += 1
    return total / count


def centered_scatter(h):
    """(1/N) sum_i (h_i - mean)(h_i - mean)^T accumulated one sample at a time."""
    h = np.asarray(h, dtype=float)
    n = h.shape[0]
    mean = h.sum(axis=0) / n
    out = np.zeros((h.shape[1], h.shape[1]))
    for i in range(n):
        d = h[i] - mean
        out += np.outer(d, d)
    return out / n


def weighted_scatter(h, labels, counts):
    """Cluster-size-weighted scatter about the global mean.

    Sample i contributes with weight counts[labels[i]] / N, so larger
    clusters count for more while the deviation stays global.
    """
    h = np.asarray(h, dtype=float)
    n = h.shape[0]
    mean = h.sum(axis=0) / n
    out = np.zeros((h.shape[1], h.shape[1]))
    for i in range(n):
        d = h[i] - mean
        out += (counts[labels[i]] / n) * np.outer(d, d)
    return out


def partition_wcss(x, members):
    """Within-cluster sum of squares of one concrete partition.

    ``members`` is a list of index lists; each cluster is scored against its
    own mean.
    """
    x = np.asarray(x, dtype=float)
    total = 0.0
    for side in members:
        pts = x[list(side)]
        centroid = pts.mean(axis=0)
        total += float(np.sum((pts - centroid) ** 2))
    return total


def best_two_cluster_wcss(x):
    """Exhaustive minimum within-cluster sum of squares over all 2-partitions.

    Sample 0 is pinned to the first cluster, which halves the search space
    without losing any partition.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    best = math.inf
    for mask in range(1, 2 ** (n - 1)):
        members = [[0], []]
        for i in range(1, n):
            members[(mask >> (i - 1)) & 1].append(i)
        best = min(best, partition_wcss(x, members))
    return best
