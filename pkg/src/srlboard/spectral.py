"""Spectral clustering over a DTW distance matrix (stage-1 grouping).

Gaussian affinity with a median-distance bandwidth, symmetric normalized
Laplacian, embedding on the k bottom eigenvectors, row normalization, then
k-means with k-means++ seeding and restarts. Deterministic for a fixed
(matrix, k, seed).
"""

from __future__ import annotations

import numpy as np

from srlboard.distance import DistanceMatrix
from srlboard.errors import KOutOfRange


def _kmeans_pp_init(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]))
    idx = int(rng.integers(n))
    centers[0] = x[idx]
    d2 = np.sum((x - centers[0]) ** 2, axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total == 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[c] = x[idx]
        d2 = np.minimum(d2, np.sum((x - centers[c]) ** 2, axis=1))
    return centers


def kmeans(
    x: np.ndarray, k: int, seed: int, n_restarts: int = 10, max_iter: int = 300
) -> np.ndarray:
    """Lloyd's algorithm, k-means++ seeding, best of n_restarts by inertia."""
    n = x.shape[0]
    rng = np.random.default_rng(seed)
    best_labels = None
    best_inertia = np.inf
    for _ in range(n_restarts):
        centers = _kmeans_pp_init(x, k, rng)
        labels = np.zeros(n, dtype=np.intp)
        for _ in range(max_iter):
            dists = np.linalg.norm(x[:, None, :] - centers[None, :, :], axis=2)
            new_labels = dists.argmin(axis=1)
            for c in range(k):
                members = new_labels == c
                if members.any():
                    centers[c] = x[members].mean(axis=0)
                else:
                    # reseed an empty cluster with the worst-fit point
                    farthest = int(dists[np.arange(n), new_labels].argmax())
                    centers[c] = x[farthest]
                    new_labels[farthest] = c
            if np.array_equal(new_labels, labels):
                break
            labels = new_labels
        inertia = float(
            np.sum((x - centers[labels]) ** 2)
        )
        if inertia < best_inertia - 1e-12:
            best_inertia = inertia
            best_labels = labels.copy()
    return best_labels


def _canonical_relabel(labels: np.ndarray) -> np.ndarray:
    """Relabel by ascending order of first occurrence."""
    mapping: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        if lab not in mapping:
            mapping[int(lab)] = len(mapping)
        out[i] = mapping[int(lab)]
    return out


def spectral_embedding(d: np.ndarray, k: int) -> np.ndarray:
    """Row-normalized bottom-k eigenvectors of the normalized Laplacian."""
    n = d.shape[0]
    off_diag = d[~np.eye(n, dtype=bool)]
    sigma = float(np.median(off_diag)) if off_diag.size else 1.0
    if sigma <= 0:
        positive = off_diag[off_diag > 0]
        sigma = float(positive.min()) if positive.size else 1.0

    affinity = np.exp(-(d ** 2) / (2 * sigma ** 2))
    degree = affinity.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(degree)
    laplacian = np.eye(n) - (affinity * inv_sqrt[:, None]) * inv_sqrt[None, :]
    laplacian = (laplacian + laplacian.T) / 2  # symmetrize rounding noise

    _, vectors = np.linalg.eigh(laplacian)
    embedding = vectors[:, :k]
    norms = np.linalg.norm(embedding, axis=1)
    nonzero = norms > 0
    embedding = embedding.copy()
    embedding[nonzero] /= norms[nonzero, None]
    return embedding


def spectral_cluster(d: DistanceMatrix, k: int, seed: int = 42) -> dict[str, int]:
    """Cluster the roster into k groups; labels are canonical by roster order."""
    n = d.n
    if not 1 <= k <= n:
        raise KOutOfRange(f"k={k} outside [1, {n}]")
    if k == 1:
        return {s: 0 for s in d.roster}
    if k == n:
        return {s: i for i, s in enumerate(d.roster)}

    embedding = spectral_embedding(d.values, k)
    labels = _canonical_relabel(kmeans(embedding, k, seed))
    return {s: int(labels[i]) for i, s in enumerate(d.roster)}
