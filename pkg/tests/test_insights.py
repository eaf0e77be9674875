"""Insights tests: summaries, chart defaults, captions, bundle assembly."""

import numpy as np
import pytest

from srlboard.features import (
    DIMENSION_FEATURES,
    Dimension,
    FeatureMatrixSet,
    FeatureSeries,
    WeekRange,
)
from srlboard.insights import (
    BUNDLE_KEYS,
    ChartSpec,
    ChartType,
    DataKind,
    PageId,
    Series,
    Trend,
    ValueMode,
    ViewMode,
    build_all_content,
    bundle_from_json,
    bundle_to_json,
    caption_and_alttext,
    default_chart_type,
    profile_page_content,
    weekly_summary,
)
from srlboard.profiles import DimensionClustering, StudentProfile

WR = WeekRange(1, 4)


def synthetic_features(values_by_student=None):
    """Small hand-built feature set over 2 students and 4 weeks."""
    roster = ("s1", "s2")
    maps = {}
    defaults = {
        ("effort", "time_online_hours"): {"s1": [2.5, 3.2, 3.2, 0.0], "s2": [1.5, 1.5, 1.5, 1.5]},
        ("effort", "video_clicks"): {"s1": [10, 12, 9, 0], "s2": [4, 4, 4, 4]},
        ("consistency", "mean_session_minutes"): {"s1": [30, 40, 35, 0], "s2": [20, 20, 20, 20]},
        ("consistency", "relative_time_online"): {"s1": [1.25, 1.36, 1.36, 0], "s2": [0.75, 0.64, 0.64, 2.0]},
        ("regularity", "dow_periodicity"): {"s1": [0.8, 0.8, 0.7, 0], "s2": [0.2, 0.3, 0.2, 0.2]},
        ("regularity", "hod_periodicity"): {"s1": [0.9, 0.8, 0.8, 0], "s2": [0.1, 0.2, 0.2, 0.1]},
        ("proactivity", "mean_delay_days"): {"s1": [-1.0, -0.5, -1.0, 14.0], "s2": [3.0, 4.0, 5.0, 14.0]},
        ("control", "pause_rate"): {"s1": [8.0, 7.5, 8.2, 0], "s2": [1.0, 1.2, 0.8, 1.1]},
        ("control", "speed_changes"): {"s1": [5, 6, 5, 0], "s2": [0, 1, 0, 0]},
    }
    if values_by_student:
        defaults.update(values_by_student)
    for (dim_name, feat), per_student in defaults.items():
        dim = Dimension(dim_name)
        maps[(dim, feat)] = {
            sid: FeatureSeries(sid, dim, feat, np.array(vals, dtype=float))
            for sid, vals in per_student.items()
        }
    return FeatureMatrixSet(maps, roster, WR)


def make_clusterings():
    labels = {"s1": 0, "s2": 1}
    return {
        Dimension.EFFORT: DimensionClustering(
            Dimension.EFFORT, 2, labels, {0: "higher intensity", 1: "lower intensity"}, {}),
        Dimension.CONSISTENCY: DimensionClustering(
            Dimension.CONSISTENCY, 2, labels, {0: "higher intensity", 1: "lower intensity"}, {}),
        Dimension.REGULARITY: DimensionClustering(
            Dimension.REGULARITY, 2, labels, {0: "high regularity", 1: "low regularity"}, {}),
        Dimension.PROACTIVITY: DimensionClustering(
            Dimension.PROACTIVITY, 2, labels, {0: "up-to-date", 1: "delayed"}, {}),
        Dimension.CONTROL: DimensionClustering(
            Dimension.CONTROL, 2, labels, {0: "higher intensity", 1: "lower intensity"}, {}),
    }


def make_profiles():
    return [
        StudentProfile(0, (0, 0, 0, 0, 0), frozenset({"s1"}), 88.0, 0.0),
        StudentProfile(1, (1, 1, 1, 1, 1), frozenset({"s2"}), 55.0, 0.0),
    ]


class TestWeeklySummary:
    def test_trend_up_with_delta(self):
        features = synthetic_features()
        summaries = weekly_summary(features, WR)
        # cohort effort: week1 (2.5+1.5)/2 = 2.0, week2 (3.2+1.5)/2 = 2.35
        effort_w2 = summaries[1].dimensions["effort"]
        assert effort_w2.trend is Trend.UP
        assert effort_w2.delta_pct == pytest.approx(100 * 0.35 / 2.0)

    def test_first_week_undefined(self):
        summaries = weekly_summary(synthetic_features(), WR)
        for stat in summaries[0].dimensions.values():
            assert stat.trend is Trend.UNDEFINED
            assert stat.delta_pct is None

    def test_flat_when_identical(self):
        summaries = weekly_summary(synthetic_features(), WR)
        effort_w3 = summaries[2].dimensions["effort"]
        assert effort_w3.trend is Trend.FLAT
        assert effort_w3.delta_pct == 0.0

    def test_example_28_percent(self):
        features = synthetic_features({
            ("effort", "time_online_hours"): {"s1": [2.5, 3.2, 3.2, 0.0],
                                              "s2": [2.5, 3.2, 3.2, 0.0]},
        })
        summaries = weekly_summary(features, WR)
        assert summaries[1].dimensions["effort"].delta_pct == pytest.approx(28.0)


class TestChartDefaults:
    # exact preference table
    TABLE = {
        DataKind.TIME_SERIES: ChartType.BAR,
        DataKind.FREQUENCY: ChartType.BAR,
        DataKind.CATEGORICAL_PROPORTION: ChartType.PIE,
        DataKind.CATEGORICAL_TIME_SERIES: ChartType.STACKED_AREA,
        DataKind.COMPOSITION_OVER_TIME: ChartType.STACKED_BAR,
        DataKind.GROUP_COMPARISON_TIME_SERIES: ChartType.GROUPED_BAR_SUPERPOSED,
    }

    def test_full_table(self):
        for kind, expected in self.TABLE.items():
            assert default_chart_type(kind).chart_type is expected

    def test_side_by_side_layout(self):
        assert default_chart_type(DataKind.GROUP_COMPARISON_TIME_SERIES).layout == "side_by_side"

    def test_total_function(self):
        for kind in DataKind:
            assert default_chart_type(kind) is not None


class TestCaptionAltText:
    def test_mentions_weeks_and_extremes(self):
        spec = ChartSpec(
            ChartType.BAR,
            (Series("class average", (5.0, 6.0, 7.0, 8.0, 9.0), (1.0, 2.5, 1.8, 3.4, 2.0)),),
            ValueMode.ABSOLUTE, False, "week", "hours online",
        )
        caption, alt = caption_and_alttext(spec, "Average time online", (5, 9))
        assert "weeks 5–9" in caption
        assert "maximum 3.4 at week 8" in alt
        assert "minimum 1 at week 5" in alt

    def test_empty_series_notes_no_activity(self):
        spec = ChartSpec(ChartType.BAR, (Series("class average", (), ()),),
                         ValueMode.ABSOLUTE, False, "week", "hours online")
        caption, alt = caption_and_alttext(spec, "Average time online", (1, 4))
        assert "no activity" in caption.lower()
        assert "No data" in alt

    def test_multi_series_alt_names_every_series(self):
        spec = ChartSpec(
            ChartType.GROUPED_BAR_SUPERPOSED,
            (
                Series("group 0: higher intensity (n=3)", (1.0, 2.0), (1.0, 2.0)),
                Series("group 1: lower intensity (n=5)", (1.0, 2.0), (0.5, 0.2)),
            ),
            ValueMode.ABSOLUTE, True, "week", "hours online",
        )
        _, alt = caption_and_alttext(spec, "Effort by group", (1, 2))
        assert "group 0: higher intensity (n=3)" in alt
        assert "group 1: lower intensity (n=5)" in alt

    def test_deterministic(self):
        spec = ChartSpec(ChartType.BAR, (Series("a", (1.0,), (2.0,)),),
                         ValueMode.ABSOLUTE, False, "week", "h")
        assert caption_and_alttext(spec, "T", (1, 1)) == caption_and_alttext(spec, "T", (1, 1))


class TestProfilePage:
    def test_five_profiles_give_five_blocks_and_pie(self):
        roster = tuple(f"s{i}" for i in range(5))
        maps = {}
        for dim, names in DIMENSION_FEATURES.items():
            for name in names:
                maps[(dim, name)] = {
                    s: FeatureSeries(s, dim, name, np.full(4, float(i)))
                    for i, s in enumerate(roster)
                }
        features = FeatureMatrixSet(maps, roster, WR)
        clusterings = {
            dim: DimensionClustering(dim, 5, {s: i for i, s in enumerate(roster)},
                                     {i: f"descriptor {i}" for i in range(5)}, {})
            for dim in Dimension
        }
        profiles = [
            StudentProfile(i, (i, i, i, i, i), frozenset({f"s{i}"}), None, None)
            for i in range(5)
        ]
        bundle = profile_page_content(
            "c1", profiles, clusterings, features, WR, "2026-01-01T00:00:00Z", {})
        assert len(bundle.stats["profiles"]) == 5
        pie = bundle.charts[0]
        assert pie.spec.chart_type is ChartType.PIE
        assert len(pie.spec.series[0].y) == 5

    def test_single_profile_full_pie(self):
        features = synthetic_features()
        clusterings = make_clusterings()
        profiles = [StudentProfile(0, (0, 0, 0, 0, 0), frozenset({"s1", "s2"}), 70.0, 5.0)]
        bundle = profile_page_content(
            "c1", profiles, clusterings, features, WR, "2026-01-01T00:00:00Z", {})
        pie = bundle.charts[0]
        assert pie.spec.series[0].y == (100.0,)

    def test_ungraded_profile_undefined_marker(self):
        features = synthetic_features()
        profiles = [
            StudentProfile(0, (0, 0, 0, 0, 0), frozenset({"s1"}), None, None),
            StudentProfile(1, (1, 1, 1, 1, 1), frozenset({"s2"}), 55.0, 0.0),
        ]
        bundle = profile_page_content(
            "c1", profiles, make_clusterings(), features, WR, "2026-01-01T00:00:00Z", {})
        block = bundle.stats["profiles"][0]
        assert block["grade_mean"] is None


class TestBuildAllContent:
    def _build(self):
        return build_all_content(
            "c1", WR, synthetic_features(), make_clusterings(), make_profiles(),
            "2026-01-01T00:00:00Z", {"seed": 42},
        )

    def test_complete_key_set(self):
        bundles = self._build()
        keys = {(b.page_id, b.view) for b in bundles}
        assert keys == set(BUNDLE_KEYS)
        assert len(bundles) == len(BUNDLE_KEYS)

    def test_all_charts_have_caption_and_alttext(self):
        for bundle in self._build():
            assert bundle.charts, f"{bundle.page_id} has no charts"
            for item in bundle.charts:
                assert item.caption.strip()
                assert item.alt_text.strip()

    def test_groups_view_has_two_series_with_legend(self):
        for bundle in self._build():
            if bundle.view is ViewMode.GROUPS:
                for item in bundle.charts:
                    assert len(item.spec.series) == 2
                    assert item.spec.legend

    def test_percentage_labels_contain_roster_total(self):
        for bundle in self._build():
            for item in bundle.charts:
                if item.spec.value_mode is ValueMode.PERCENTAGE_WITH_TOTAL:
                    assert "2" in item.spec.y_label  # roster of 2 students

    def test_composition_reaches_100(self):
        bundles = self._build()
        proactivity = next(
            b for b in bundles
            if b.page_id is PageId.PROACTIVITY and b.view is ViewMode.AGGREGATED
        )
        stacked = [c for c in proactivity.charts if c.spec.chart_type is ChartType.STACKED_BAR]
        assert len(stacked) == 1
        sums = [sum(p) for p in zip(*(s.y for s in stacked[0].spec.series))]
        for total in sums:
            assert total == pytest.approx(100.0)
        assert any("did not watch" in s.name for s in stacked[0].spec.series)

    def test_single_week_range_trend_undefined(self):
        bundles = build_all_content(
            "c1", WeekRange(2, 2), synthetic_features(), make_clusterings(),
            make_profiles(), "2026-01-01T00:00:00Z", {},
        )
        summary = next(b for b in bundles if b.page_id is PageId.SUMMARY)
        week = summary.stats["weeks"][0]
        assert all(d["trend"] == "undefined" for d in week["dimensions"].values())

    def test_reproducible_byte_identical(self):
        a = [bundle_to_json(b) for b in self._build()]
        b = [bundle_to_json(b) for b in self._build()]
        assert a == b

    def test_json_round_trip(self):
        for bundle in self._build():
            payload = bundle_to_json(bundle)
            restored = bundle_from_json(payload)
            assert bundle_to_json(restored) == payload

    def test_schema_version_checked(self):
        payload = bundle_to_json(self._build()[0]).replace('"v1"', '"v9"')
        with pytest.raises(ValueError):
            bundle_from_json(payload)
