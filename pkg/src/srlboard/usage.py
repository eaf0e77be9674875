"""Dashboard telemetry analytics: dwell times and page-transition model.

Pages are open strings so the groups view of a behavior page can appear
as its own node (e.g. "effort_groups"), matching how teachers navigate.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Mapping, Sequence

import numpy as np

from srlboard.errors import MalformedEvent
from srlboard.ingest import parse_timestamp

# menu order, aggregated page followed by its groups view
PAGE_ORDER: tuple[str, ...] = (
    "summary",
    "profiles",
    "proactivity",
    "proactivity_groups",
    "effort",
    "effort_groups",
    "consistency",
    "consistency_groups",
    "control",
    "control_groups",
    "regularity",
    "regularity_groups",
)


@dataclass(frozen=True)
class UsageEvent:
    session_id: str
    page_id: str
    entered_at: datetime
    left_at: datetime

    def __post_init__(self):
        if self.entered_at > self.left_at:
            raise MalformedEvent(
                f"entered_at {self.entered_at} after left_at {self.left_at}"
            )

    @property
    def dwell_seconds(self) -> float:
        return (self.left_at - self.entered_at).total_seconds()

    def dedupe_key(self) -> tuple[str, str, str]:
        return (self.session_id, self.page_id, self.entered_at.isoformat())


def usage_event_from_dict(data: Mapping[str, str]) -> UsageEvent:
    try:
        return UsageEvent(
            session_id=str(data["session_id"]),
            page_id=str(data["page_id"]),
            entered_at=parse_timestamp(data["entered_at"]),
            left_at=parse_timestamp(data["left_at"]),
        )
    except (KeyError, ValueError, TypeError) as err:
        if isinstance(err, MalformedEvent):
            raise
        raise MalformedEvent(str(err)) from None


@dataclass(frozen=True)
class PageDwell:
    page_id: str
    mean_seconds: float
    sd_seconds: float
    visit_count: int


@dataclass(frozen=True)
class DwellReport:
    pages: tuple[PageDwell, ...]

    def for_page(self, page_id: str) -> PageDwell:
        for p in self.pages:
            if p.page_id == page_id:
                return p
        raise KeyError(page_id)


@dataclass(frozen=True)
class TransitionMatrix:
    pages: tuple[str, ...]
    counts: np.ndarray        # (n, n) int
    probabilities: np.ndarray  # row-stochastic where the row has exits

    def probability(self, from_page: str, to_page: str) -> float:
        i = self.pages.index(from_page)
        j = self.pages.index(to_page)
        return float(self.probabilities[i, j])


def _page_sort_key(page_id: str):
    try:
        return (0, PAGE_ORDER.index(page_id))
    except ValueError:
        return (1, page_id)


def dwell_times(events: Iterable[UsageEvent]) -> DwellReport:
    """Per-page mean and population-sd dwell seconds with visit counts."""
    per_page: dict[str, list[float]] = {}
    for ev in events:
        per_page.setdefault(ev.page_id, []).append(ev.dwell_seconds)
    pages = []
    for page_id in sorted(per_page, key=_page_sort_key):
        dwell = np.array(per_page[page_id])
        pages.append(
            PageDwell(
                page_id=page_id,
                mean_seconds=float(dwell.mean()),
                sd_seconds=float(dwell.std()),
                visit_count=len(dwell),
            )
        )
    return DwellReport(tuple(pages))


def transition_matrix(
    events: Iterable[UsageEvent], include_self_loops: bool = True
) -> TransitionMatrix:
    """First-order Markov counts over consecutive page visits per session."""
    by_session: dict[str, list[UsageEvent]] = {}
    page_set: set[str] = set()
    for ev in events:
        by_session.setdefault(ev.session_id, []).append(ev)
        page_set.add(ev.page_id)

    pages = tuple(sorted(page_set, key=_page_sort_key))
    index = {p: i for i, p in enumerate(pages)}
    n = len(pages)
    counts = np.zeros((n, n), dtype=np.int64)
    for session_events in by_session.values():
        ordered = sorted(session_events, key=lambda e: e.entered_at)
        for a, b in zip(ordered, ordered[1:]):
            if not include_self_loops and a.page_id == b.page_id:
                continue
            counts[index[a.page_id], index[b.page_id]] += 1

    probabilities = np.zeros((n, n), dtype=np.float64)
    row_sums = counts.sum(axis=1)
    nonzero = row_sums > 0
    probabilities[nonzero] = counts[nonzero] / row_sums[nonzero, None]
    return TransitionMatrix(pages, counts, probabilities)


def filter_edges(
    m: TransitionMatrix, min_p: float
) -> list[tuple[str, str, float]]:
    """Edges with probability strictly above min_p, most probable first."""
    if not 0 <= min_p <= 1:
        raise ValueError(f"min_p={min_p} outside [0, 1]")
    edges = [
        (m.pages[i], m.pages[j], float(m.probabilities[i, j]))
        for i in range(len(m.pages))
        for j in range(len(m.pages))
        if m.probabilities[i, j] > min_p
    ]
    edges.sort(key=lambda e: (-e[2], _page_sort_key(e[0]), _page_sort_key(e[1])))
    return edges


def usage_report_dict(
    events: Sequence[UsageEvent], min_p: float = 0.12, include_self_loops: bool = True
) -> dict:
    """Combined dwell + filtered-edges document served by the API and CLI."""
    report = dwell_times(events)
    matrix = transition_matrix(events, include_self_loops=include_self_loops)
    return {
        "dwell": [
            {
                "page_id": p.page_id,
                "mean_seconds": p.mean_seconds,
                "sd_seconds": p.sd_seconds,
                "visit_count": p.visit_count,
            }
            for p in report.pages
        ],
        "min_p": min_p,
        "edges": [
            {"from": a, "to": b, "p": p} for a, b, p in filter_edges(matrix, min_p)
        ],
        "pages": list(matrix.pages),
    }
