"""Per-student weekly feature series for the five SRL dimensions.

Effort       time_online_hours, video_clicks
Consistency  mean_session_minutes, relative_time_online
Regularity   dow_periodicity, hod_periodicity (entropy-based, in [0, 1])
Proactivity  mean_delay_days (negative = anticipation; unwatched censored)
Control      pause_rate, speed_changes

All series are indexed by course week; weeks with no activity are 0 except
Proactivity, where scheduled-but-unwatched content is censored at +cap days
and weeks with no scheduled content are 0 and flagged.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from srlboard.errors import RosterMismatch, WeekRangeEmpty
from srlboard.ingest import (
    ClickEvent,
    CourseSchedule,
    EventType,
    Session,
    week_bounds,
    week_of,
)

DAY_SECONDS = 86400.0
HOUR_SECONDS = 3600.0


class Dimension(str, Enum):
    EFFORT = "effort"
    CONSISTENCY = "consistency"
    REGULARITY = "regularity"
    PROACTIVITY = "proactivity"
    CONTROL = "control"


DIMENSION_FEATURES: dict[Dimension, tuple[str, ...]] = {
    Dimension.EFFORT: ("time_online_hours", "video_clicks"),
    Dimension.CONSISTENCY: ("mean_session_minutes", "relative_time_online"),
    Dimension.REGULARITY: ("dow_periodicity", "hod_periodicity"),
    Dimension.PROACTIVITY: ("mean_delay_days",),
    Dimension.CONTROL: ("pause_rate", "speed_changes"),
}

# Summary-page statistic per dimension.
PRIMARY_FEATURE: dict[Dimension, str] = {
    Dimension.EFFORT: "time_online_hours",
    Dimension.CONSISTENCY: "mean_session_minutes",
    Dimension.REGULARITY: "dow_periodicity",  # summary averages both periodicities
    Dimension.PROACTIVITY: "mean_delay_days",
    Dimension.CONTROL: "pause_rate",
}


@dataclass(frozen=True)
class WeekRange:
    first: int
    last: int

    def __post_init__(self):
        if self.last < self.first:
            raise WeekRangeEmpty(f"week range [{self.first}, {self.last}] is empty")

    @property
    def count(self) -> int:
        return self.last - self.first + 1

    def indices(self) -> range:
        return range(self.first, self.last + 1)

    def offset(self, week_index: int) -> int:
        return week_index - self.first

    def contains(self, week_index: int) -> bool:
        return self.first <= week_index <= self.last


@dataclass(frozen=True)
class FeatureSeries:
    student_id: str
    dimension: Dimension
    feature_name: str
    values: np.ndarray

    def __eq__(self, other):
        return (
            isinstance(other, FeatureSeries)
            and self.student_id == other.student_id
            and self.dimension == other.dimension
            and self.feature_name == other.feature_name
            and np.array_equal(self.values, other.values)
        )


FeatureMap = dict[str, FeatureSeries]


@dataclass
class FeatureMatrixSet:
    maps: dict[tuple[Dimension, str], FeatureMap]
    roster: tuple[str, ...]
    week_range: WeekRange
    proactivity_no_content_weeks: tuple[int, ...] = ()

    def series(self, dimension: Dimension, feature_name: str, student_id: str) -> FeatureSeries:
        return self.maps[(dimension, feature_name)][student_id]

    def feature_names(self, dimension: Dimension) -> tuple[str, ...]:
        return DIMENSION_FEATURES[dimension]

    def matrix(self, dimension: Dimension, feature_name: str) -> np.ndarray:
        """Roster-ordered (n_students, n_weeks) value matrix."""
        fmap = self.maps[(dimension, feature_name)]
        return np.stack([fmap[s].values for s in self.roster])

    def cohort_weekly_mean(self, dimension: Dimension, feature_name: str) -> np.ndarray:
        return self.matrix(dimension, feature_name).mean(axis=0)


def _overlap_seconds(start: datetime, end: datetime, lo: datetime, hi: datetime) -> float:
    latest_start = max(start, lo)
    earliest_end = min(end, hi)
    return max(0.0, (earliest_end - latest_start).total_seconds())


def _session_week_hours(
    sessions: Iterable[Session], week_range: WeekRange, week_zero: datetime
) -> dict[str, np.ndarray]:
    """Per-student weekly hours, sessions split proportionally across weeks."""
    out: dict[str, np.ndarray] = {}
    for s in sessions:
        hours = out.setdefault(s.student_id, np.zeros(week_range.count))
        first_w = week_of(s.start, week_zero)
        last_w = week_of(s.end, week_zero)
        for w in range(max(first_w, week_range.first), min(last_w, week_range.last) + 1):
            lo, hi = week_bounds(w, week_zero)
            hours[week_range.offset(w)] += _overlap_seconds(s.start, s.end, lo, hi) / HOUR_SECONDS
    return out


def _zeros(week_range: WeekRange) -> np.ndarray:
    return np.zeros(week_range.count)


def effort_features(
    sessions: list[Session],
    events: list[ClickEvent],
    week_range: WeekRange,
    week_zero: datetime,
    roster: Iterable[str],
) -> tuple[FeatureMap, FeatureMap]:
    """time_online_hours and video_clicks per student."""
    if week_range.count < 1:
        raise WeekRangeEmpty(str(week_range))
    week_hours = _session_week_hours(sessions, week_range, week_zero)
    clicks: dict[str, np.ndarray] = {}
    for ev in events:
        if not ev.event_type.is_video:
            continue
        w = week_of(ev.timestamp, week_zero)
        if week_range.contains(w):
            arr = clicks.setdefault(ev.student_id, _zeros(week_range))
            arr[week_range.offset(w)] += 1

    time_map: FeatureMap = {}
    click_map: FeatureMap = {}
    for sid in roster:
        time_map[sid] = FeatureSeries(
            sid, Dimension.EFFORT, "time_online_hours", week_hours.get(sid, _zeros(week_range))
        )
        click_map[sid] = FeatureSeries(
            sid, Dimension.EFFORT, "video_clicks", clicks.get(sid, _zeros(week_range))
        )
    return time_map, click_map


def consistency_features(
    sessions: list[Session],
    week_range: WeekRange,
    week_zero: datetime,
    roster: Iterable[str],
) -> tuple[FeatureMap, FeatureMap]:
    """mean_session_minutes and relative_time_online per student.

    relative_time_online divides by the cohort mean weekly time, so the
    roster mean of the feature is 1 for any week with nonzero activity.
    """
    roster = list(roster)
    durations: dict[str, list[list[float]]] = {
        sid: [[] for _ in week_range.indices()] for sid in roster
    }
    for s in sessions:
        w = week_of(s.start, week_zero)
        if s.student_id in durations and week_range.contains(w):
            durations[s.student_id][week_range.offset(w)].append(
                s.duration.total_seconds() / 60.0
            )

    week_hours = _session_week_hours(sessions, week_range, week_zero)
    hours_matrix = np.stack([week_hours.get(sid, _zeros(week_range)) for sid in roster])
    cohort_mean = hours_matrix.mean(axis=0) if roster else _zeros(week_range)

    mean_map: FeatureMap = {}
    rel_map: FeatureMap = {}
    for idx, sid in enumerate(roster):
        means = np.array(
            [float(np.mean(d)) if d else 0.0 for d in durations[sid]]
        )
        mean_map[sid] = FeatureSeries(sid, Dimension.CONSISTENCY, "mean_session_minutes", means)
        with np.errstate(invalid="ignore", divide="ignore"):
            rel = np.where(cohort_mean > 0, hours_matrix[idx] / cohort_mean, 0.0)
        rel_map[sid] = FeatureSeries(sid, Dimension.CONSISTENCY, "relative_time_online", rel)
    return mean_map, rel_map


def periodicity_score(histogram: np.ndarray) -> float:
    """1 - normalized Shannon entropy of a count histogram; 0 for empty."""
    total = histogram.sum()
    if total == 0:
        return 0.0
    p = histogram[histogram > 0] / total
    entropy = -float(np.sum(p * np.log(p)))
    return 1.0 - entropy / math.log(len(histogram))


def regularity_features(
    events: list[ClickEvent],
    week_range: WeekRange,
    week_zero: datetime,
    roster: Iterable[str],
) -> tuple[FeatureMap, FeatureMap]:
    """Day-of-week and hour-of-day periodicity scores per student and week."""
    dow_hist: dict[str, np.ndarray] = {}
    hod_hist: dict[str, np.ndarray] = {}
    for ev in events:
        w = week_of(ev.timestamp, week_zero)
        if not week_range.contains(w):
            continue
        off = week_range.offset(w)
        d = dow_hist.setdefault(ev.student_id, np.zeros((week_range.count, 7)))
        h = hod_hist.setdefault(ev.student_id, np.zeros((week_range.count, 24)))
        d[off, ev.timestamp.weekday()] += 1
        h[off, ev.timestamp.hour] += 1

    dow_map: FeatureMap = {}
    hod_map: FeatureMap = {}
    for sid in roster:
        d = dow_hist.get(sid)
        h = hod_hist.get(sid)
        dow_scores = _zeros(week_range)
        hod_scores = _zeros(week_range)
        if d is not None:
            dow_scores = np.array([periodicity_score(row) for row in d])
            hod_scores = np.array([periodicity_score(row) for row in h])
        dow_map[sid] = FeatureSeries(sid, Dimension.REGULARITY, "dow_periodicity", dow_scores)
        hod_map[sid] = FeatureSeries(sid, Dimension.REGULARITY, "hod_periodicity", hod_scores)
    return dow_map, hod_map


@dataclass
class ProactivityResult:
    series: FeatureMap
    no_content_weeks: tuple[int, ...]


def proactivity_feature(
    events: list[ClickEvent],
    schedule: CourseSchedule,
    week_range: WeekRange,
    roster: Iterable[str],
    cap_days: float = 14.0,
) -> ProactivityResult:
    """Signed days between first play and the scheduled in-person session.

    Unwatched videos are censored at +cap_days. Weeks without scheduled
    content score 0 and are flagged.
    """
    first_play: dict[tuple[str, str], datetime] = {}
    for ev in events:
        if ev.event_type is EventType.VIDEO_PLAY and ev.object_id is not None:
            key = (ev.student_id, ev.object_id)
            if key not in first_play or ev.timestamp < first_play[key]:
                first_play[key] = ev.timestamp

    by_week = {w: schedule.entries_for_week(w) for w in week_range.indices()}
    no_content = tuple(w for w, entries in by_week.items() if not entries)

    series: FeatureMap = {}
    for sid in roster:
        values = _zeros(week_range)
        for w, entries in by_week.items():
            if not entries:
                continue
            delays = []
            for entry in entries:
                played = first_play.get((sid, entry.video_id))
                if played is None:
                    delays.append(cap_days)
                else:
                    delays.append(
                        (played - entry.session_start).total_seconds() / DAY_SECONDS
                    )
            values[week_range.offset(w)] = float(np.mean(delays))
        series[sid] = FeatureSeries(sid, Dimension.PROACTIVITY, "mean_delay_days", values)
    return ProactivityResult(series, no_content)


def control_features(
    events: list[ClickEvent],
    sessions: list[Session],
    week_range: WeekRange,
    week_zero: datetime,
    roster: Iterable[str],
) -> tuple[FeatureMap, FeatureMap]:
    """pause_rate (pauses per video-session hour) and speed_changes.

    Video-session time is the weekly share of sessions that contain at
    least one video event; watch duration itself is never inferred.
    """
    pauses: dict[str, np.ndarray] = {}
    speeds: dict[str, np.ndarray] = {}
    video_times: dict[str, list[datetime]] = {}
    for ev in events:
        w = week_of(ev.timestamp, week_zero)
        if ev.event_type is EventType.VIDEO_PAUSE and week_range.contains(w):
            pauses.setdefault(ev.student_id, _zeros(week_range))[week_range.offset(w)] += 1
        elif ev.event_type is EventType.VIDEO_SPEED_CHANGE and week_range.contains(w):
            speeds.setdefault(ev.student_id, _zeros(week_range))[week_range.offset(w)] += 1
        if ev.event_type.is_video:
            video_times.setdefault(ev.student_id, []).append(ev.timestamp)
    for times in video_times.values():
        times.sort()

    def has_video_event(s: Session) -> bool:
        times = video_times.get(s.student_id)
        if not times:
            return False
        i = bisect_left(times, s.start)
        return i < len(times) and times[i] <= s.end

    video_hours = _session_week_hours(
        (s for s in sessions if has_video_event(s)), week_range, week_zero
    )

    pause_map: FeatureMap = {}
    speed_map: FeatureMap = {}
    for sid in roster:
        p = pauses.get(sid, _zeros(week_range))
        vh = video_hours.get(sid, _zeros(week_range))
        with np.errstate(invalid="ignore", divide="ignore"):
            rate = np.where(vh > 0, p / np.where(vh > 0, vh, 1.0), 0.0)
        pause_map[sid] = FeatureSeries(sid, Dimension.CONTROL, "pause_rate", rate)
        speed_map[sid] = FeatureSeries(
            sid, Dimension.CONTROL, "speed_changes", speeds.get(sid, _zeros(week_range))
        )
    return pause_map, speed_map


def build_feature_matrix(
    feature_maps: Mapping[tuple[Dimension, str], FeatureMap],
    roster: Iterable[str],
    week_range: WeekRange,
    proactivity_no_content_weeks: tuple[int, ...] = (),
) -> FeatureMatrixSet:
    """Assemble and validate the full (dimension, feature) -> series table."""
    roster = tuple(roster)
    if not roster:
        raise RosterMismatch("empty roster")
    for dimension, names in DIMENSION_FEATURES.items():
        for name in names:
            if (dimension, name) not in feature_maps:
                raise RosterMismatch(f"missing feature map {dimension.value}/{name}")
    maps: dict[tuple[Dimension, str], FeatureMap] = {}
    for key, fmap in feature_maps.items():
        if set(fmap) != set(roster):
            raise RosterMismatch(
                f"feature {key[0].value}/{key[1]} covers {len(fmap)} students, "
                f"roster has {len(roster)}"
            )
        for series in fmap.values():
            if len(series.values) != week_range.count:
                raise RosterMismatch(
                    f"series length {len(series.values)} != weeks {week_range.count}"
                )
        maps[key] = dict(fmap)
    return FeatureMatrixSet(maps, roster, week_range, proactivity_no_content_weeks)


def compute_all_features(
    events: list[ClickEvent],
    sessions: list[Session],
    schedule: CourseSchedule,
    week_range: WeekRange,
    roster: Iterable[str],
    proactivity_cap_days: float = 14.0,
) -> FeatureMatrixSet:
    """Run every feature extractor over a shared roster and week range."""
    roster = tuple(roster)
    week_zero = schedule.week_zero
    time_map, click_map = effort_features(sessions, events, week_range, week_zero, roster)
    mean_map, rel_map = consistency_features(sessions, week_range, week_zero, roster)
    dow_map, hod_map = regularity_features(events, week_range, week_zero, roster)
    pro = proactivity_feature(events, schedule, week_range, roster, proactivity_cap_days)
    pause_map, speed_map = control_features(events, sessions, week_range, week_zero, roster)
    return build_feature_matrix(
        {
            (Dimension.EFFORT, "time_online_hours"): time_map,
            (Dimension.EFFORT, "video_clicks"): click_map,
            (Dimension.CONSISTENCY, "mean_session_minutes"): mean_map,
            (Dimension.CONSISTENCY, "relative_time_online"): rel_map,
            (Dimension.REGULARITY, "dow_periodicity"): dow_map,
            (Dimension.REGULARITY, "hod_periodicity"): hod_map,
            (Dimension.PROACTIVITY, "mean_delay_days"): pro.series,
            (Dimension.CONTROL, "pause_rate"): pause_map,
            (Dimension.CONTROL, "speed_changes"): speed_map,
        },
        roster,
        week_range,
        pro.no_content_weeks,
    )


def export_features_csv(features: FeatureMatrixSet) -> str:
    """Wide table `student_id,dimension,feature,w<first>..w<last>`."""
    header = ["student_id", "dimension", "feature"] + [
        f"w{w}" for w in features.week_range.indices()
    ]
    rows = [",".join(header)]
    for (dimension, name), fmap in sorted(
        features.maps.items(), key=lambda kv: (kv[0][0].value, kv[0][1])
    ):
        for sid in features.roster:
            values = ",".join(f"{v:.6g}" for v in fmap[sid].values)
            rows.append(f"{sid},{dimension.value},{name},{values}")
    return "\n".join(rows) + "\n"
