"""Offline pipeline: files in, published dashboard content out.

Stages: parse + sessionize, weekly features, per-dimension DTW distances
summed per dimension, spectral clustering per dimension, k-modes over the
label tuples, descriptors and grade statistics, then content bundles.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

from srlboard.config import RunConfig
from srlboard.distance import dimension_distance, pairwise_distances
from srlboard.features import (
    DIMENSION_FEATURES,
    Dimension,
    FeatureMatrixSet,
    WeekRange,
    compute_all_features,
)
from srlboard.ingest import (
    GradeBook,
    MalformedLine,
    load_grades,
    load_schedule,
    parse_events,
    sessionize,
)
from srlboard.insights import ContentBundle, build_all_content
from srlboard.profiles import (
    DimensionClustering,
    StudentProfile,
    build_profiles,
    describe_clusters,
)
from srlboard.spectral import spectral_cluster


@dataclass
class PipelineResult:
    features: FeatureMatrixSet
    clusterings: dict[Dimension, DimensionClustering]
    profiles: list[StudentProfile]
    bundles: list[ContentBundle]
    parse_problems: list[MalformedLine]
    meta: dict


def cluster_dimension(
    features: FeatureMatrixSet,
    dimension: Dimension,
    k: int,
    seed: int,
    normalize: bool = True,
) -> DimensionClustering:
    """Stage 1 for one dimension: DTW per feature, sum, spectral, describe."""
    matrices = [
        pairwise_distances(
            {s: features.maps[(dimension, name)][s].values for s in features.roster}
        )
        for name in DIMENSION_FEATURES[dimension]
    ]
    combined = dimension_distance(matrices, normalize=normalize)
    labels = spectral_cluster(combined, k, seed)
    descriptors, feature_means = describe_clusters(dimension, labels, features)
    return DimensionClustering(dimension, k, labels, descriptors, feature_means)


def run_pipeline(
    events_text: str,
    schedule_text: str,
    grades_text: str,
    config: RunConfig,
    generated_at: Optional[str] = None,
) -> PipelineResult:
    """Full offline run over raw file contents."""
    events, problems = parse_events(
        events_text.splitlines(), max_malformed_ratio=config.max_malformed_ratio
    )
    schedule = load_schedule(
        schedule_text, week_zero=config.week_zero, weeks=config.weeks
    )
    grades = load_grades(grades_text) if grades_text.strip() else GradeBook()

    sessions = sessionize(events, config.gap_threshold)
    roster = tuple(sorted({e.student_id for e in events}))
    first, last = config.analysis_range()
    week_range = WeekRange(first, last)

    features = compute_all_features(
        events, sessions, schedule, week_range, roster,
        proactivity_cap_days=config.proactivity_cap_days,
    )

    clusterings = {
        d: cluster_dimension(
            features, d, config.k_per_dimension[d], config.seed,
            config.normalize_distances,
        )
        for d in Dimension
    }
    profiles = build_profiles(clusterings, grades, config.k_profiles, config.seed)

    if generated_at is None:
        generated_at = (
            datetime.now(timezone.utc).replace(microsecond=0).isoformat()
        ).replace("+00:00", "Z")
    meta = config.meta()
    bundles = build_all_content(
        config.course_id, week_range, features, clusterings, profiles,
        generated_at, meta, config.proactivity_cap_days,
    )
    return PipelineResult(features, clusterings, profiles, bundles, problems, meta)


def profile_of(result: PipelineResult, student_id: str) -> int:
    for p in result.profiles:
        if student_id in p.members:
            return p.profile_id
    raise KeyError(student_id)


def export_labels_csv(result: PipelineResult) -> str:
    """Table student_id,<dimension labels>,profile_id in export column order."""
    columns = [
        ("effort_label", Dimension.EFFORT),
        ("consistency_label", Dimension.CONSISTENCY),
        ("regularity_label", Dimension.REGULARITY),
        ("control_label", Dimension.CONTROL),
        ("proactivity_label", Dimension.PROACTIVITY),
    ]
    lines = ["student_id," + ",".join(name for name, _ in columns) + ",profile_id"]
    membership = {
        s: p.profile_id for p in result.profiles for s in p.members
    }
    for sid in result.features.roster:
        labels = ",".join(str(result.clusterings[d].labels[sid]) for _, d in columns)
        lines.append(f"{sid},{labels},{membership[sid]}")
    return "\n".join(lines) + "\n"


def export_run_metadata(result: PipelineResult) -> dict:
    return {
        "meta": result.meta,
        "roster_size": len(result.features.roster),
        "week_range": [
            result.features.week_range.first,
            result.features.week_range.last,
        ],
        "profiles": [
            {
                "profile_id": p.profile_id,
                "mode": list(p.mode),
                "size": p.size,
                "grade_mean": p.grade_mean,
                "grade_sd": p.grade_sd,
            }
            for p in result.profiles
        ],
        "parse_problems": len(result.parse_problems),
    }
