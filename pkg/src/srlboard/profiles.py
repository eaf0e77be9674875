"""Cluster descriptors and cross-dimension student profiles.

Stage-1 clusters get short templated descriptors (intensity, regularity,
up-to-date vs delayed). Stage 2 groups the per-dimension label tuples with
k-modes into profiles, each carrying member grades.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from srlboard.errors import MissingDimension
from srlboard.features import DIMENSION_FEATURES, Dimension, FeatureMatrixSet
from srlboard.ingest import GradeBook
from srlboard.kmodes import kmodes

DIMENSION_ORDER = tuple(Dimension)


@dataclass
class DimensionClustering:
    dimension: Dimension
    k: int
    labels: dict[str, int]
    descriptors: dict[int, str]
    feature_means: dict[int, dict[str, float]]


@dataclass
class StudentProfile:
    profile_id: int
    mode: tuple[int, ...]
    members: frozenset[str]
    grade_mean: Optional[float]
    grade_sd: Optional[float]

    @property
    def size(self) -> int:
        return len(self.members)


def describe_clusters(
    dimension: Dimension,
    labels: Mapping[str, int],
    features: FeatureMatrixSet,
) -> tuple[dict[int, str], dict[int, dict[str, float]]]:
    """Templated descriptor per cluster, from cluster-vs-global feature means.

    Effort/Control/Consistency describe intensity, Regularity high/low,
    Proactivity up-to-date vs delayed (sign of the mean delay).
    """
    names = DIMENSION_FEATURES[dimension]
    matrices = {name: features.matrix(dimension, name) for name in names}
    roster_index = {s: i for i, s in enumerate(features.roster)}

    cluster_ids = sorted(set(labels.values()))
    descriptors: dict[int, str] = {}
    feature_means: dict[int, dict[str, float]] = {}
    for cid in cluster_ids:
        rows = [roster_index[s] for s, lab in labels.items() if lab == cid]
        means = {name: float(matrices[name][rows].mean()) for name in names}
        feature_means[cid] = means

        if dimension is Dimension.PROACTIVITY:
            delay = means["mean_delay_days"]
            descriptors[cid] = "up-to-date" if delay <= 0 else "delayed"
            continue

        score = 0.0
        for name in names:
            global_mean = float(matrices[name].mean())
            global_sd = float(matrices[name].std())
            scale = global_sd if global_sd > 0 else (abs(global_mean) or 1.0)
            score += (means[name] - global_mean) / scale
        if dimension is Dimension.REGULARITY:
            descriptors[cid] = "high regularity" if score >= 0 else "low regularity"
        else:
            descriptors[cid] = "higher intensity" if score >= 0 else "lower intensity"
    return descriptors, feature_means


def label_rows(
    clusterings: Mapping[Dimension, DimensionClustering]
) -> dict[str, tuple[int, ...]]:
    """Per-student 5-tuple of dimension labels, in fixed dimension order."""
    missing = [d.value for d in DIMENSION_ORDER if d not in clusterings]
    if missing:
        raise MissingDimension(", ".join(missing))
    roster = list(clusterings[DIMENSION_ORDER[0]].labels)
    return {
        sid: tuple(clusterings[d].labels[sid] for d in DIMENSION_ORDER)
        for sid in roster
    }


def build_profiles(
    clusterings: Mapping[Dimension, DimensionClustering],
    grades: GradeBook,
    k_profiles: int,
    seed: int = 42,
) -> list[StudentProfile]:
    """K-modes over the label tuples; profiles keep member grade statistics.

    Students without grades stay members but are excluded from the
    statistics; a profile with no graded members reports None.
    """
    rows = label_rows(clusterings)
    result = kmodes(rows, k_profiles, seed)

    relabel: dict[int, int] = {}
    for sid in rows:
        raw = result.assignments[sid]
        if raw not in relabel:
            relabel[raw] = len(relabel)

    members_by_profile: dict[int, set[str]] = {}
    for sid in rows:
        members_by_profile.setdefault(relabel[result.assignments[sid]], set()).add(sid)

    profiles: list[StudentProfile] = []
    for pid in sorted(members_by_profile):
        members = members_by_profile[pid]
        raw_label = next(raw for raw, new in relabel.items() if new == pid)
        graded = [grades.get(s) for s in members]
        graded = [g for g in graded if g is not None]
        if graded:
            mean = float(np.mean(graded))
            sd = float(np.std(graded))
        else:
            mean = sd = None
        profiles.append(
            StudentProfile(
                profile_id=pid,
                mode=result.modes[raw_label],
                members=frozenset(members),
                grade_mean=mean,
                grade_sd=sd,
            )
        )
    return profiles


def profile_descriptor_text(
    profile: StudentProfile,
    clusterings: Mapping[Dimension, DimensionClustering],
) -> dict[str, str]:
    """Dimension-name to descriptor map for one profile's mode tuple."""
    return {
        dim.value: clusterings[dim].descriptors[label]
        for dim, label in zip(DIMENSION_ORDER, profile.mode)
    }
