"""Domain exceptions shared across the pipeline modules."""


class SrlboardError(Exception):
    """Base class for all srlboard domain errors."""


# --- ingest ---------------------------------------------------------------

class MalformedLine(SrlboardError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class UnknownEventType(MalformedLine):
    def __init__(self, line_no: int, event_type: str):
        super().__init__(line_no, f"unknown event type {event_type!r}")
        self.event_type = event_type


class TooManyMalformedLines(SrlboardError):
    """Raised when the malformed-line ratio crosses the abort threshold."""

    def __init__(self, errors, total_lines: int, max_ratio: float):
        super().__init__(
            f"{len(errors)} of {total_lines} lines malformed "
            f"(abort threshold {max_ratio:.2%})"
        )
        self.errors = list(errors)
        self.total_lines = total_lines
        self.max_ratio = max_ratio


class ScheduleOutOfRange(SrlboardError):
    pass


class DuplicateVideoId(SrlboardError):
    pass


# --- features -------------------------------------------------------------

class WeekRangeEmpty(SrlboardError):
    pass


class RosterMismatch(SrlboardError):
    pass


# --- clustering -----------------------------------------------------------

class EmptySeries(SrlboardError):
    pass


class LengthMismatch(SrlboardError):
    pass


class KOutOfRange(SrlboardError):
    pass


class MissingDimension(SrlboardError):
    pass


# --- service --------------------------------------------------------------

class NotFound(SrlboardError):
    pass


class InvalidRange(SrlboardError):
    pass


class MalformedEvent(SrlboardError):
    pass


class IncompleteRun(SrlboardError):
    pass


# --- synth ----------------------------------------------------------------

class InvalidSpec(SrlboardError):
    pass
