"""Usage analytics tests: dwell times, transitions, edge filtering."""

from datetime import datetime, timedelta, timezone

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srlboard.errors import MalformedEvent
from srlboard.usage import (
    UsageEvent,
    dwell_times,
    filter_edges,
    transition_matrix,
    usage_event_from_dict,
)

T0 = datetime(2026, 3, 2, 9, 0, tzinfo=timezone.utc)


def visit(session, page, start_min, dwell_min):
    start = T0 + timedelta(minutes=start_min)
    return UsageEvent(session, page, start, start + timedelta(minutes=dwell_min))


def session_path(session, pages, dwell_min=1.0, start_min=0.0):
    events = []
    t = start_min
    for page in pages:
        events.append(visit(session, page, t, dwell_min))
        t += dwell_min
    return events


class TestDwell:
    def test_single_visit(self):
        report = dwell_times([visit("t1", "profiles", 0, 10)])
        p = report.for_page("profiles")
        assert p.mean_seconds == 600.0
        assert p.sd_seconds == 0.0
        assert p.visit_count == 1

    def test_empty(self):
        assert dwell_times([]).pages == ()

    def test_mean_and_population_sd(self):
        events = [visit("t1", "effort", 0, 4), visit("t2", "effort", 60, 8)]
        p = dwell_times(events).for_page("effort")
        assert p.mean_seconds == pytest.approx(360.0)
        assert p.sd_seconds == pytest.approx(120.0)  # population sd

    def test_entered_after_left_rejected(self):
        with pytest.raises(MalformedEvent):
            UsageEvent("t1", "summary", T0, T0 - timedelta(seconds=1))

    def test_from_dict_validation(self):
        with pytest.raises(MalformedEvent):
            usage_event_from_dict({"session_id": "x", "page_id": "summary"})


class TestTransitions:
    def test_alternating_pair(self):
        events = session_path("t1", ["summary", "profiles", "summary", "profiles"])
        m = transition_matrix(events)
        assert m.probability("summary", "profiles") == 1.0
        assert m.probability("profiles", "summary") == 1.0

    def test_single_page_sessions_all_zero(self):
        events = [visit("t1", "summary", 0, 5), visit("t2", "effort", 0, 5)]
        m = transition_matrix(events)
        assert m.counts.sum() == 0
        assert np.all(m.probabilities == 0)

    def test_rows_with_exits_sum_to_one(self):
        events = (
            session_path("t1", ["summary", "profiles", "effort"])
            + session_path("t2", ["summary", "effort"])
            + session_path("t3", ["effort", "effort_groups", "summary"])
        )
        m = transition_matrix(events)
        row_sums = m.probabilities.sum(axis=1)
        for i in range(len(m.pages)):
            if m.counts[i].sum() > 0:
                assert row_sums[i] == pytest.approx(1.0, abs=1e-9)
            else:
                assert row_sums[i] == 0.0

    def test_self_loops_counted_by_default(self):
        events = session_path("t1", ["summary", "summary", "profiles"])
        m = transition_matrix(events)
        assert m.probability("summary", "summary") == 0.5
        m2 = transition_matrix(events, include_self_loops=False)
        assert m2.probability("summary", "summary") == 0.0
        assert m2.probability("summary", "profiles") == 1.0

    def test_session_order_invariance(self):
        a = session_path("t1", ["summary", "profiles"]) + session_path(
            "t2", ["effort", "summary"]
        )
        b = list(reversed(a))
        ma = transition_matrix(a)
        mb = transition_matrix(b)
        assert ma.pages == mb.pages
        np.testing.assert_array_equal(ma.counts, mb.counts)

    def test_menu_page_order(self):
        events = session_path("t1", ["regularity", "summary", "effort_groups"])
        m = transition_matrix(events)
        assert m.pages == ("summary", "effort_groups", "regularity")


class TestFilterEdges:
    def _fixture_matrix(self):
        events = []
        # 7 exits from effort: 1 to effort_groups, 6 to consistency
        events += session_path("t1", ["effort", "effort_groups"])
        for i in range(6):
            events += session_path(f"c{i}", ["effort", "consistency"])
        # every control_groups exit goes to regularity
        for i in range(5):
            events += session_path(f"r{i}", ["control_groups", "regularity"])
        return transition_matrix(events)

    def test_paper_calibrated_edges_retained(self):
        m = self._fixture_matrix()
        edges = filter_edges(m, 0.12)
        as_dict = {(a, b): p for a, b, p in edges}
        assert as_dict[("control_groups", "regularity")] == 1.0
        assert as_dict[("effort", "effort_groups")] == pytest.approx(1 / 7)

    def test_min_p_one_empty(self):
        assert filter_edges(self._fixture_matrix(), 1.0) == []

    def test_min_p_zero_all_nonzero(self):
        m = self._fixture_matrix()
        edges = filter_edges(m, 0.0)
        assert len(edges) == int(np.count_nonzero(m.probabilities))

    def test_sorted_descending(self):
        edges = filter_edges(self._fixture_matrix(), 0.0)
        probs = [p for _, _, p in edges]
        assert probs == sorted(probs, reverse=True)

    @given(
        min_a=st.floats(min_value=0, max_value=1),
        min_b=st.floats(min_value=0, max_value=1),
    )
    @settings(max_examples=50)
    def test_monotone_filtering(self, min_a, min_b):
        min_a, min_b = min(min_a, min_b), max(min_a, min_b)
        m = self._fixture_matrix()
        low = {(a, b) for a, b, _ in filter_edges(m, min_a)}
        high = {(a, b) for a, b, _ in filter_edges(m, min_b)}
        assert high <= low
