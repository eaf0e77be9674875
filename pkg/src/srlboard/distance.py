"""DTW distances between student feature series, and their aggregation.

Stage 1 of the clustering pipeline: one DTW distance matrix per feature,
then an entrywise sum per dimension (optionally max-normalizing each
feature matrix first so features with larger units do not dominate).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from srlboard import _kernels
from srlboard.errors import EmptySeries, LengthMismatch, RosterMismatch


@dataclass(frozen=True)
class DistanceMatrix:
    roster: tuple[str, ...]
    values: np.ndarray  # (n, n) symmetric, zero diagonal, finite, >= 0

    @property
    def n(self) -> int:
        return len(self.roster)

    def validate(self) -> None:
        v = self.values
        if v.shape != (self.n, self.n):
            raise ValueError(f"shape {v.shape} does not match roster of {self.n}")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite distance entries")
        if np.any(v < 0):
            raise ValueError("negative distance entries")
        if not np.allclose(v, v.T):
            raise ValueError("matrix is not symmetric")
        if np.any(np.diag(v) != 0):
            raise ValueError("nonzero diagonal")


def dtw_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """Classic DTW with absolute-difference cost and match/insert/delete steps.

    Symmetric, non-negative, zero on identical series; not a metric (the
    triangle inequality can fail), so nothing downstream may assume it.
    """
    if len(a) == 0 or len(b) == 0:
        raise EmptySeries("DTW requires non-empty series")
    return _kernels.dtw(a, b)


def pairwise_distances(series: Mapping[str, np.ndarray]) -> DistanceMatrix:
    """All-pairs DTW over a roster of equal-length series."""
    roster = tuple(series)
    if not roster:
        raise EmptySeries("no series given")
    lengths = {len(series[s]) for s in roster}
    if len(lengths) != 1:
        raise LengthMismatch(f"series lengths differ: {sorted(lengths)}")
    if lengths == {0}:
        raise EmptySeries("series are empty")
    x = np.stack([np.asarray(series[s], dtype=np.float64) for s in roster])
    return DistanceMatrix(roster, _kernels.dtw_matrix(x))


def dimension_distance(
    matrices: Sequence[DistanceMatrix], normalize: bool = True
) -> DistanceMatrix:
    """Entrywise sum of one dimension's feature matrices.

    With normalize, each matrix is divided by its own maximum entry first
    (all-zero matrices pass through unchanged).
    """
    if not matrices:
        raise ValueError("need at least one matrix")
    roster = matrices[0].roster
    for m in matrices[1:]:
        if m.roster != roster:
            raise RosterMismatch("distance matrices have different roster orders")
    total = np.zeros_like(matrices[0].values)
    for m in matrices:
        values = m.values
        if normalize:
            peak = values.max()
            if peak > 0:
                values = values / peak
        total = total + values
    return DistanceMatrix(roster, total)
