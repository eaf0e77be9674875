"""Run configuration: gap threshold, cluster counts, caps, seed, course."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Mapping, Optional

from srlboard.features import Dimension
from srlboard.ingest import parse_timestamp

DEFAULT_K_PER_DIMENSION = {d: 2 for d in Dimension}


@dataclass
class RunConfig:
    course_id: str
    week_zero: datetime
    weeks: int
    gap_threshold_minutes: float = 30.0
    k_per_dimension: Mapping[Dimension, int] = field(
        default_factory=lambda: dict(DEFAULT_K_PER_DIMENSION)
    )
    k_profiles: int = 5
    normalize_distances: bool = True
    proactivity_cap_days: float = 14.0
    seed: int = 42
    max_malformed_ratio: float = 0.01
    week_first: Optional[int] = None  # analysis range; defaults to the course
    week_last: Optional[int] = None

    @property
    def gap_threshold(self) -> timedelta:
        return timedelta(minutes=self.gap_threshold_minutes)

    def analysis_range(self) -> tuple[int, int]:
        return (self.week_first or 1, self.week_last or self.weeks)

    def meta(self) -> dict:
        """Run metadata recorded alongside every output."""
        return {
            "seed": self.seed,
            "k_per_dimension": {d.value: k for d, k in self.k_per_dimension.items()},
            "k_profiles": self.k_profiles,
            "normalize_distances": self.normalize_distances,
            "gap_threshold_minutes": self.gap_threshold_minutes,
            "proactivity_cap_days": self.proactivity_cap_days,
        }


def config_from_dict(data: Mapping) -> RunConfig:
    k_raw = data.get("k_per_dimension", {})
    k_per_dimension = dict(DEFAULT_K_PER_DIMENSION)
    for name, k in k_raw.items():
        k_per_dimension[Dimension(name)] = int(k)
    return RunConfig(
        course_id=data["course_id"],
        week_zero=parse_timestamp(data["week_zero"]),
        weeks=int(data["weeks"]),
        gap_threshold_minutes=float(data.get("gap_threshold_minutes", 30.0)),
        k_per_dimension=k_per_dimension,
        k_profiles=int(data.get("k_profiles", 5)),
        normalize_distances=bool(data.get("normalize_distances", True)),
        proactivity_cap_days=float(data.get("proactivity_cap_days", 14.0)),
        seed=int(data.get("seed", 42)),
        max_malformed_ratio=float(data.get("max_malformed_ratio", 0.01)),
        week_first=data.get("week_first"),
        week_last=data.get("week_last"),
    )


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))
