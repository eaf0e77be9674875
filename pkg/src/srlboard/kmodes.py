"""K-modes clustering over categorical label tuples (stage-2 grouping).

Hamming dissimilarity, k-means++-style seeding on Hamming distance,
alternating assignment / mode updates with deterministic tie-breaking:
assignment ties go to the lowest cluster index, mode ties to the smallest
label value. Empty clusters are reseeded with the point farthest from its
current mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from srlboard.errors import KOutOfRange

MAX_ITERATIONS = 100


@dataclass
class KModesResult:
    assignments: dict[str, int]
    modes: list[tuple[int, ...]]
    cost: float
    cost_history: list[float]
    iterations: int


def _hamming_to_modes(x: np.ndarray, modes: np.ndarray) -> np.ndarray:
    """(n, k) matrix of Hamming distances from every row to every mode."""
    return (x[:, None, :] != modes[None, :, :]).sum(axis=2)


def _mode_of(rows: np.ndarray) -> np.ndarray:
    """Coordinatewise most frequent value; ties toward the smallest value."""
    out = np.empty(rows.shape[1], dtype=rows.dtype)
    for j in range(rows.shape[1]):
        values, counts = np.unique(rows[:, j], return_counts=True)
        out[j] = values[counts.argmax()]  # np.unique sorts, argmax takes first max
    return out


def _kmodes_pp_init(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    modes = np.empty((k, x.shape[1]), dtype=x.dtype)
    modes[0] = x[int(rng.integers(n))]
    d = (x != modes[0]).sum(axis=1).astype(float)
    for c in range(1, k):
        weights = d ** 2
        total = weights.sum()
        if total == 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=weights / total))
        modes[c] = x[idx]
        d = np.minimum(d, (x != modes[c]).sum(axis=1).astype(float))
    return modes


def kmodes(
    rows: Mapping[str, Sequence[int]], k: int, seed: int = 42
) -> KModesResult:
    """Cluster categorical tuples into k groups by total Hamming cost."""
    roster = tuple(rows)
    n = len(roster)
    if not 1 <= k <= n:
        raise KOutOfRange(f"k={k} outside [1, {n}]")
    arity = {len(rows[s]) for s in roster}
    if len(arity) != 1:
        raise ValueError(f"tuples have mixed arity: {sorted(arity)}")

    x = np.array([tuple(rows[s]) for s in roster], dtype=np.int64)
    rng = np.random.default_rng(seed)
    modes = _kmodes_pp_init(x, k, rng)

    labels = np.full(n, -1, dtype=np.intp)
    cost_history: list[float] = []
    iterations = 0
    for _ in range(MAX_ITERATIONS):
        iterations += 1
        dists = _hamming_to_modes(x, modes)
        new_labels = dists.argmin(axis=1)  # ties -> lowest cluster index

        for c in range(k):
            if not np.any(new_labels == c):
                occupied = dists[np.arange(n), new_labels]
                # only steal from clusters that keep at least one member,
                # and only a point that actually misfits its mode
                sizes = np.bincount(new_labels, minlength=k)
                candidates = np.where(sizes[new_labels] > 1)[0]
                if not len(candidates) or occupied[candidates].max() == 0:
                    continue
                farthest = candidates[occupied[candidates].argmax()]
                new_labels[farthest] = c
                modes[c] = x[farthest]

        for c in range(k):
            members = x[new_labels == c]
            if len(members):
                modes[c] = _mode_of(members)

        cost = float((x != modes[new_labels]).sum())
        cost_history.append(cost)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels

    assignments = {s: int(labels[i]) for i, s in enumerate(roster)}
    return KModesResult(
        assignments=assignments,
        modes=[tuple(int(v) for v in m) for m in modes],
        cost=cost_history[-1],
        cost_history=cost_history,
        iterations=iterations,
    )
