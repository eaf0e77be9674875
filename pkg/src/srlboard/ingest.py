"""Parse, validate, and sessionize raw clickstream logs and course metadata.

Input formats (all UTF-8):
  events   tab-separated: student_id, timestamp (ISO-8601 UTC), event_type,
           object_id (may be empty), value (may be empty); optional header
  schedule comma-separated: video_id, week_index, session_start; one header line
  grades   comma-separated: student_id, grade; one header line
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from enum import Enum
from typing import Iterable, Optional

from srlboard.errors import (
    DuplicateVideoId,
    MalformedLine,
    ScheduleOutOfRange,
    TooManyMalformedLines,
    UnknownEventType,
)

WEEK = timedelta(days=7)

EVENT_HEADER = ("student_id", "timestamp", "event_type", "object_id", "value")


class EventType(str, Enum):
    VIDEO_PLAY = "video_play"
    VIDEO_PAUSE = "video_pause"
    VIDEO_SPEED_CHANGE = "video_speed_change"
    VIDEO_SEEK = "video_seek"
    PAGE_VIEW = "page_view"
    SESSION_PING = "session_ping"

    @property
    def is_video(self) -> bool:
        return self.value.startswith("video_")


VIDEO_EVENT_TYPES = frozenset(t for t in EventType if t.is_video)


@dataclass(frozen=True)
class ClickEvent:
    student_id: str
    timestamp: datetime
    event_type: EventType
    object_id: Optional[str] = None
    value: Optional[float] = None


@dataclass(frozen=True)
class Session:
    student_id: str
    start: datetime
    end: datetime
    event_count: int

    @property
    def duration(self) -> timedelta:
        return self.end - self.start


@dataclass(frozen=True)
class ScheduleEntry:
    video_id: str
    week_index: int
    session_start: datetime


@dataclass(frozen=True)
class CourseSchedule:
    entries: tuple[ScheduleEntry, ...]
    weeks: int
    week_zero: datetime

    def entries_for_week(self, week_index: int) -> list[ScheduleEntry]:
        return [e for e in self.entries if e.week_index == week_index]


@dataclass(frozen=True)
class GradeBook:
    grades: dict[str, float] = field(default_factory=dict)

    def get(self, student_id: str) -> Optional[float]:
        return self.grades.get(student_id)


def parse_timestamp(raw: str) -> datetime:
    """ISO-8601 instant; 'Z' suffix accepted; naive times treated as UTC."""
    ts = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def week_of(ts: datetime, week_zero: datetime) -> int:
    """1-based index of the 7-day window containing ts (UTC, no DST math)."""
    return (ts - week_zero) // WEEK + 1


def week_bounds(week_index: int, week_zero: datetime) -> tuple[datetime, datetime]:
    start = week_zero + (week_index - 1) * WEEK
    return start, start + WEEK


def _parse_event_line(line_no: int, line: str) -> ClickEvent:
    parts = line.split("\t")
    if len(parts) != 5:
        raise MalformedLine(line_no, f"expected 5 tab-separated fields, got {len(parts)}")
    raw_student, raw_ts, raw_type, raw_object, raw_value = (p.strip() for p in parts)
    if not raw_student:
        raise MalformedLine(line_no, "empty student_id")
    try:
        ts = parse_timestamp(raw_ts)
    except ValueError:
        raise MalformedLine(line_no, f"bad timestamp {raw_ts!r}") from None
    try:
        event_type = EventType(raw_type)
    except ValueError:
        raise UnknownEventType(line_no, raw_type) from None
    object_id = raw_object or None
    value: Optional[float] = None
    if raw_value:
        try:
            value = float(raw_value)
        except ValueError:
            raise MalformedLine(line_no, f"bad value {raw_value!r}") from None

    if event_type is EventType.VIDEO_SPEED_CHANGE:
        if value is None:
            raise MalformedLine(line_no, "video_speed_change requires a value")
        if value <= 0:
            raise MalformedLine(line_no, f"playback speed must be > 0, got {value}")
    if event_type.is_video and object_id is None:
        raise MalformedLine(line_no, f"{event_type.value} requires an object_id")

    return ClickEvent(raw_student, ts, event_type, object_id, value)


def parse_events(
    source: Iterable[str],
    *,
    max_malformed_ratio: float = 0.01,
) -> tuple[list[ClickEvent], list[MalformedLine]]:
    """Parse the event line format into ClickEvents sorted by (student, time).

    Malformed lines are collected and returned, never silently dropped.
    Raises TooManyMalformedLines when their share of non-empty lines reaches
    max_malformed_ratio (partial data silently skewing features is worse
    than failing loudly).
    """
    events: list[ClickEvent] = []
    problems: list[MalformedLine] = []
    total = 0
    first_content_line = True
    for line_no, line in enumerate(source, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        if first_content_line:
            first_content_line = False
            if tuple(f.strip() for f in line.split("\t")) == EVENT_HEADER:
                continue
        total += 1
        try:
            events.append(_parse_event_line(line_no, line))
        except MalformedLine as err:
            problems.append(err)
    if total and len(problems) / total >= max_malformed_ratio and problems:
        raise TooManyMalformedLines(problems, total, max_malformed_ratio)
    events.sort(key=lambda e: (e.student_id, e.timestamp))
    return events, problems


def sessionize(events: list[ClickEvent], gap_threshold: timedelta = timedelta(minutes=30)) -> list[Session]:
    """Split per-student event streams into sessions at inactivity gaps.

    A new session starts whenever the gap to the student's previous event
    exceeds gap_threshold. Singleton sessions have duration 0.
    """
    if gap_threshold <= timedelta(0):
        raise ValueError("gap_threshold must be positive")
    by_student: dict[str, list[ClickEvent]] = {}
    for ev in events:
        by_student.setdefault(ev.student_id, []).append(ev)

    sessions: list[Session] = []
    for student_id in sorted(by_student):
        stream = sorted(by_student[student_id], key=lambda e: e.timestamp)
        start = stream[0].timestamp
        prev = start
        count = 0
        for ev in stream:
            if ev.timestamp - prev > gap_threshold:
                sessions.append(Session(student_id, start, prev, count))
                start = ev.timestamp
                count = 0
            prev = ev.timestamp
            count += 1
        sessions.append(Session(student_id, start, prev, count))
    return sessions


def load_schedule(raw: str, *, week_zero: datetime, weeks: int) -> CourseSchedule:
    """Load the schedule CSV (header line required) and validate it."""
    entries: list[ScheduleEntry] = []
    seen: set[str] = set()
    lines = [ln for ln in raw.splitlines() if ln.strip()]
    for line in lines[1:]:
        video_id, raw_week, raw_start = (p.strip() for p in line.split(","))
        week_index = int(raw_week)
        if not 1 <= week_index <= weeks:
            raise ScheduleOutOfRange(
                f"video {video_id!r}: week_index {week_index} outside [1, {weeks}]"
            )
        session_start = parse_timestamp(raw_start)
        lo, hi = week_bounds(week_index, week_zero)
        if not lo <= session_start < hi:
            raise ScheduleOutOfRange(
                f"video {video_id!r}: session_start {raw_start} outside week {week_index}"
            )
        if video_id in seen:
            raise DuplicateVideoId(video_id)
        seen.add(video_id)
        entries.append(ScheduleEntry(video_id, week_index, session_start))
    return CourseSchedule(tuple(entries), weeks=weeks, week_zero=week_zero)


def load_grades(raw: str) -> GradeBook:
    """Load the grades CSV (header line required)."""
    grades: dict[str, float] = {}
    lines = [ln for ln in raw.splitlines() if ln.strip()]
    for line in lines[1:]:
        student_id, raw_grade = (p.strip() for p in line.split(","))
        if not student_id:
            raise MalformedLine(0, "empty student_id in grades file")
        grades[student_id] = float(raw_grade)
    return GradeBook(grades)
