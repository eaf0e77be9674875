"""Synthetic cohorts with planted behavior archetypes, plus usage fixtures.

Each archetype fixes one level per SRL dimension; levels are expressed as
weekly plan parameters (session counts, lengths, placement, watch delays,
pause rates) and then realized as event streams that flow through the
regular ingest path. Ground truth stays exact while the full pipeline is
exercised.

Noise 0 makes same-archetype students exact behavioral clones: plan
randomness is keyed by archetype instead of student.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Mapping, Optional, Sequence

import numpy as np

from srlboard.errors import InvalidSpec
from srlboard.features import Dimension
from srlboard.ingest import format_timestamp
from srlboard.usage import UsageEvent

WEEK_ZERO = datetime(2026, 1, 5, tzinfo=timezone.utc)  # a Monday

# two lecture videos per week: (day offset, hour, video length minutes)
VIDEO_SLOTS = ((1, 10), (2, 14))  # Tuesday 10:00, Wednesday 14:00

GRID_HOURS = (8, 11, 14, 17, 20)  # low-regularity placement grid, 3 h apart

EFFORT_LEVELS = {
    "low": {"filler_sessions": 1, "seeks_per_video": 4},
    "high": {"filler_sessions": 4, "seeks_per_video": 25},
}
CONSISTENCY_LEVELS = {"constant": "constant", "increasing": "increasing"}
REGULARITY_LEVELS = ("high", "low")
PROACTIVITY_LEVELS = {"up_to_date": -1, "delayed": +4}  # watch-day offset
CONTROL_LEVELS = {
    "high": {"pause_rate_per_hour": 9.0, "speed_changes_per_video": 2},
    "low": {"pause_rate_per_hour": 1.0, "speed_changes_per_video": 0},
}


@dataclass(frozen=True)
class Archetype:
    name: str
    weight: float
    grade_mean: float
    grade_sd: float
    levels: Mapping[Dimension, str]

    def level(self, dimension: Dimension) -> str:
        return self.levels[dimension]


def _levels(effort, consistency, regularity, proactivity, control):
    return {
        Dimension.EFFORT: effort,
        Dimension.CONSISTENCY: consistency,
        Dimension.REGULARITY: regularity,
        Dimension.PROACTIVITY: proactivity,
        Dimension.CONTROL: control,
    }


# the first two mirror the applied finding that the strongest and weakest
# cohorts differ only in proactivity
BASE_ARCHETYPES: tuple[Archetype, ...] = (
    Archetype("steady-controlled", 0.25, 88.0, 4.0,
              _levels("low", "constant", "high", "up_to_date", "high")),
    Archetype("steady-but-late", 0.20, 52.0, 6.0,
              _levels("low", "constant", "high", "delayed", "high")),
    Archetype("intense-crammer", 0.20, 74.0, 5.0,
              _levels("high", "increasing", "low", "up_to_date", "low")),
    Archetype("intense-late", 0.20, 63.0, 5.0,
              _levels("high", "constant", "low", "delayed", "low")),
    Archetype("light-crammer", 0.15, 68.0, 5.0,
              _levels("low", "increasing", "low", "up_to_date", "low")),
)

_LEVEL_CHOICES = {
    Dimension.EFFORT: ("low", "high"),
    Dimension.CONSISTENCY: ("constant", "increasing"),
    Dimension.REGULARITY: ("high", "low"),
    Dimension.PROACTIVITY: ("up_to_date", "delayed"),
    Dimension.CONTROL: ("high", "low"),
}


def default_archetypes(count: int = 5) -> tuple[Archetype, ...]:
    """The designed archetype set, truncated or extended to count."""
    if not 1 <= count <= 32:
        raise InvalidSpec(f"archetype count {count} outside [1, 32]")
    chosen = list(BASE_ARCHETYPES[:count])
    used = {tuple(a.levels[d] for d in Dimension) for a in chosen}
    combo = 0
    while len(chosen) < count:
        bits = [(combo >> i) & 1 for i in range(5)]
        combo += 1
        tup = tuple(
            _LEVEL_CHOICES[d][bits[i]] for i, d in enumerate(Dimension)
        )
        if tup in used:
            continue
        used.add(tup)
        chosen.append(
            Archetype(
                f"mixed-{len(chosen)}", 1.0, 60.0 + 3.0 * len(chosen), 5.0,
                dict(zip(Dimension, tup)),
            )
        )
    total = sum(a.weight for a in chosen)
    return tuple(
        Archetype(a.name, a.weight / total, a.grade_mean, a.grade_sd, a.levels)
        for a in chosen
    )


@dataclass(frozen=True)
class CohortSpec:
    students: int
    weeks: int
    archetypes: tuple[Archetype, ...]
    noise: float = 1.0
    seed: int = 42

    def validate(self) -> None:
        if self.students < len(self.archetypes):
            raise InvalidSpec("fewer students than archetypes")
        if self.weeks < 1:
            raise InvalidSpec("need at least one week")
        if self.noise < 0:
            raise InvalidSpec("noise must be >= 0")
        if not self.archetypes:
            raise InvalidSpec("no archetypes")
        if abs(sum(a.weight for a in self.archetypes) - 1.0) > 1e-9:
            raise InvalidSpec("archetype weights must sum to 1")


@dataclass
class SyntheticCohort:
    events_tsv: str
    schedule_csv: str
    grades_csv: str
    truth_csv: str
    truth: dict[str, int]
    week_zero: datetime
    weeks: int


def apportion(weights: Sequence[float], total: int) -> list[int]:
    """Largest-remainder apportionment of total across weights."""
    raw = [w * total for w in weights]
    counts = [int(r) for r in raw]
    remainder = total - sum(counts)
    order = sorted(range(len(raw)), key=lambda i: (-(raw[i] - counts[i]), i))
    for i in order[:remainder]:
        counts[i] += 1
    return counts


@dataclass
class _SessionPlan:
    day: int          # 0..6 within the week
    hour: int
    minute: int
    length_minutes: float
    video_id: Optional[str] = None
    seeks: int = 0
    pauses: int = 0
    speed_changes: int = 0


def _session_length(consistency: str, week: int, weeks: int) -> float:
    if consistency == "constant":
        return 45.0
    if weeks == 1:
        return 52.5
    return 15.0 + (90.0 - 15.0) * (week - 1) / (weeks - 1)


def _plan_student_week(
    archetype: Archetype,
    week: int,
    weeks: int,
    rng: np.random.Generator,
    noise: float,
) -> list[_SessionPlan]:
    effort = EFFORT_LEVELS[archetype.level(Dimension.EFFORT)]
    control = CONTROL_LEVELS[archetype.level(Dimension.CONTROL)]
    regular = archetype.level(Dimension.REGULARITY) == "high"
    watch_offset = PROACTIVITY_LEVELS[archetype.level(Dimension.PROACTIVITY)]

    length = _session_length(archetype.level(Dimension.CONSISTENCY), week, weeks)
    length *= float(np.clip(1 + 0.05 * noise * rng.standard_normal(), 0.7, 1.3))

    seeks = max(0, round(effort["seeks_per_video"] * (1 + 0.1 * noise * rng.standard_normal())))
    pause_rate = control["pause_rate_per_hour"] * (1 + 0.08 * noise * rng.standard_normal())
    pauses = max(0, round(pause_rate * length / 60.0))
    n_fillers = effort["filler_sessions"]

    if regular:
        # habit: everything happens on two fixed days at fixed hours, both
        # lecture videos watched back to back on the habit day
        h0 = int(rng.choice((12, 16, 19))) if noise > 0 else 19
        habit_day = min(max(VIDEO_SLOTS[0][0] + watch_offset, 0), 6)
        second_day = habit_day + 3 if habit_day + 3 <= 6 else habit_day - 3
        video_slots = [(habit_day, h0, 0), (habit_day, h0 + 3, 0)]
        filler_slots = [
            (second_day, h0, 0),
            (second_day, h0 + 3, 0),
            (habit_day, h0 - 3, 0),
            (second_day, h0 - 3, 0),
        ][:n_fillers]
    else:
        # scattered: random days and hours, >= 3 h apart within a day
        used_hours: dict[int, list[int]] = {}

        def draw_slot(day: Optional[int] = None) -> tuple[int, int, int]:
            for _ in range(200):
                d = int(rng.integers(0, 7)) if day is None else day
                h = int(rng.integers(8, 21))
                if all(abs(h - u) >= 3 for u in used_hours.get(d, [])):
                    used_hours.setdefault(d, []).append(h)
                    return d, h, int(rng.integers(0, 50))
            raise InvalidSpec("could not place session on the weekly grid")

        video_slots = []
        for sched_day, _ in VIDEO_SLOTS:
            if watch_offset < 0:
                day = max(sched_day - int(rng.integers(1, 3)), 0)
            else:
                day = min(sched_day + 3 + int(rng.integers(0, 2)), 6)
            video_slots.append(draw_slot(day=day))
        filler_slots = [draw_slot() for _ in range(n_fillers)]

    plans = []
    for (day, hour, minute), (sched_day, _) in zip(video_slots, VIDEO_SLOTS):
        plans.append(
            _SessionPlan(
                day=day, hour=hour, minute=minute, length_minutes=length,
                video_id=f"v{week:02d}_{sched_day}", seeks=seeks, pauses=pauses,
                speed_changes=control["speed_changes_per_video"],
            )
        )
    for day, hour, minute in filler_slots:
        plans.append(
            _SessionPlan(day=day, hour=hour, minute=minute, length_minutes=length)
        )
    return plans


def _emit_session(
    student_id: str, week_start: datetime, plan: _SessionPlan
) -> list[tuple[datetime, str, str, str]]:
    """Rows (timestamp, event_type, object_id, value) for one session."""
    start = week_start + timedelta(days=plan.day, hours=plan.hour, minutes=plan.minute)
    length_s = int(plan.length_minutes * 60)
    rows: list[tuple[datetime, str, str, str]] = []

    def at(offset_s: float, event_type: str, object_id: str = "", value: str = ""):
        rows.append((start + timedelta(seconds=int(offset_s)), event_type, object_id, value))

    if plan.video_id:
        at(0, "video_play", plan.video_id)
        inner = plan.seeks + plan.pauses + plan.speed_changes
        speeds = (1.25, 1.5, 0.75)
        kinds = (
            ["video_seek"] * plan.seeks
            + ["video_pause"] * plan.pauses
            + ["video_speed_change"] * plan.speed_changes
        )
        for i, kind in enumerate(kinds):
            offset = length_s * (i + 1) / (inner + 1)
            value = f"{speeds[i % 3]}" if kind == "video_speed_change" else ""
            at(offset, kind, plan.video_id, value)
    else:
        at(0, "page_view", "page_home")
        step = 600
        t = step
        while t < length_s:
            at(t, "page_view", "page_home")
            t += step
    # pings keep long sessions in one piece and pin the exact duration
    t = 900
    while t < length_s:
        at(t, "session_ping")
        t += 900
    at(length_s, "session_ping")
    return rows


def generate_cohort(spec: CohortSpec) -> SyntheticCohort:
    """Deterministic cohort: event log, schedule, grades, ground truth."""
    spec.validate()
    weights = [a.weight for a in spec.archetypes]
    counts = apportion(weights, spec.students)

    width = max(4, len(str(spec.students)))
    assignments: list[tuple[str, int]] = []
    idx = 0
    for archetype_idx, count in enumerate(counts):
        for _ in range(count):
            assignments.append((f"s{idx + 1:0{width}d}", archetype_idx))
            idx += 1

    schedule_rows = ["video_id,week_index,session_start"]
    for week in range(1, spec.weeks + 1):
        week_start = WEEK_ZERO + timedelta(days=7 * (week - 1))
        for day, hour in VIDEO_SLOTS:
            ts = week_start + timedelta(days=day, hours=hour)
            schedule_rows.append(f"v{week:02d}_{day},{week},{format_timestamp(ts)}")

    event_rows: list[tuple[str, datetime, str, str, str]] = []
    grade_rows = ["student_id,grade"]
    truth_rows = ["student_id,archetype_id"]
    truth: dict[str, int] = {}

    for student_idx, (student_id, archetype_idx) in enumerate(assignments):
        archetype = spec.archetypes[archetype_idx]
        truth[student_id] = archetype_idx
        truth_rows.append(f"{student_id},{archetype_idx}")

        grade_rng = np.random.default_rng([spec.seed, 11, student_idx])
        grade = archetype.grade_mean + archetype.grade_sd * grade_rng.standard_normal()
        grade_rows.append(f"{student_id},{grade:.2f}")

        for week in range(1, spec.weeks + 1):
            plan_key = archetype_idx if spec.noise == 0 else 100_000 + student_idx
            rng = np.random.default_rng([spec.seed, 7, plan_key, week])
            week_start = WEEK_ZERO + timedelta(days=7 * (week - 1))
            for plan in _plan_student_week(archetype, week, spec.weeks, rng, spec.noise):
                for ts, event_type, object_id, value in _emit_session(
                    student_id, week_start, plan
                ):
                    event_rows.append((student_id, ts, event_type, object_id, value))

    event_rows.sort(key=lambda r: (r[0], r[1]))
    event_lines = ["student_id\ttimestamp\tevent_type\tobject_id\tvalue"]
    for student_id, ts, event_type, object_id, value in event_rows:
        event_lines.append(
            f"{student_id}\t{format_timestamp(ts)}\t{event_type}\t{object_id}\t{value}"
        )

    return SyntheticCohort(
        events_tsv="\n".join(event_lines) + "\n",
        schedule_csv="\n".join(schedule_rows) + "\n",
        grades_csv="\n".join(grade_rows) + "\n",
        truth_csv="\n".join(truth_rows) + "\n",
        truth=truth,
        week_zero=WEEK_ZERO,
        weeks=spec.weeks,
    )


# --- usage-log generation -----------------------------------------------------

DEFAULT_DWELL_SECONDS: dict[str, float] = {
    "summary": 180.0,
    "profiles": 600.0,
    "proactivity": 240.0,
    "effort": 200.0,
    "effort_groups": 150.0,
    "consistency": 160.0,
    "consistency_groups": 138.0,
    "control": 170.0,
    "control_groups": 140.0,
    "regularity": 190.0,
    "regularity_groups": 145.0,
    "proactivity_groups": 155.0,
}


def generate_usage(
    edge_weights: Mapping[tuple[str, str], float],
    sessions: int,
    seed: int = 42,
    dwell_seconds: Optional[Mapping[str, float]] = None,
) -> list[UsageEvent]:
    """Two-page sessions whose transition counts follow edge_weights exactly.

    Sessions are apportioned to edges by largest remainder, so whenever
    sessions splits the weights integrally the empirical probabilities
    equal the targets exactly (count construction, not sampling).
    """
    if sessions < 0:
        raise InvalidSpec("sessions must be >= 0")
    for (a, b), w in edge_weights.items():
        if w < 0:
            raise InvalidSpec(f"negative weight on edge {a}->{b}")
    total_weight = sum(edge_weights.values())
    if sessions and total_weight == 0:
        raise InvalidSpec("all edge weights are zero")
    if sessions == 0:
        return []

    dwell = dict(DEFAULT_DWELL_SECONDS)
    if dwell_seconds:
        dwell.update(dwell_seconds)

    edges = sorted(edge_weights)
    counts = apportion([edge_weights[e] / total_weight for e in edges], sessions)

    rng = np.random.default_rng([seed, 23])
    events: list[UsageEvent] = []
    t = datetime(2026, 3, 2, 9, 0, tzinfo=timezone.utc)
    session_no = 0
    for edge, count in zip(edges, counts):
        for _ in range(count):
            session_no += 1
            sid = f"u{session_no:05d}"
            enter = t + timedelta(minutes=int(rng.integers(0, 30)))
            for page in edge:
                stay = timedelta(seconds=dwell.get(page, 120.0))
                events.append(UsageEvent(sid, page, enter, enter + stay))
                enter = enter + stay
            t += timedelta(hours=1)
    return events
