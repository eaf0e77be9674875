"""Servable dashboard content: summaries, profile descriptions, chart specs.

Chart-type defaults encode the teacher-preference study that shipped with
the product requirements: bar plots for time series and frequencies, pies
for proportions, stacked areas for group evolution, side-by-side
superposed bars for group comparison, legends whenever a chart has more
than one series, and percentages annotated with the roster total.

Everything here is a pure function of pipeline outputs, so republishing
from identical inputs yields byte-identical bundles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from srlboard.errors import WeekRangeEmpty
from srlboard.features import (
    DIMENSION_FEATURES,
    Dimension,
    FeatureMatrixSet,
    WeekRange,
)
from srlboard.profiles import (
    DIMENSION_ORDER,
    DimensionClustering,
    StudentProfile,
    profile_descriptor_text,
)

SCHEMA_VERSION = "v1"
PALETTE_ID = "okabe-ito"

FLAT_BAND = 0.01  # |week-over-week delta| below 1% of previous reads as flat


class PageId(str, Enum):
    SUMMARY = "summary"
    PROFILES = "profiles"
    PROACTIVITY = "proactivity"
    EFFORT = "effort"
    CONSISTENCY = "consistency"
    CONTROL = "control"
    REGULARITY = "regularity"


class ViewMode(str, Enum):
    AGGREGATED = "aggregated"
    GROUPS = "groups"


BEHAVIOR_PAGES: dict[PageId, Dimension] = {
    PageId.PROACTIVITY: Dimension.PROACTIVITY,
    PageId.EFFORT: Dimension.EFFORT,
    PageId.CONSISTENCY: Dimension.CONSISTENCY,
    PageId.CONTROL: Dimension.CONTROL,
    PageId.REGULARITY: Dimension.REGULARITY,
}

# every key a publish run must cover: overview pages plus both views of
# each behavior page
BUNDLE_KEYS: tuple[tuple[PageId, ViewMode], ...] = (
    (PageId.SUMMARY, ViewMode.AGGREGATED),
    (PageId.PROFILES, ViewMode.AGGREGATED),
) + tuple(
    (page, view)
    for page in BEHAVIOR_PAGES
    for view in (ViewMode.AGGREGATED, ViewMode.GROUPS)
)


class ChartType(str, Enum):
    BAR = "bar"
    BAR_WITH_LINE = "bar_with_line"
    LINE = "line"
    LINE_SD = "line_sd"
    STACKED_AREA = "stacked_area"
    PIE = "pie"
    STACKED_BAR = "stacked_bar"
    GROUPED_BAR_SUPERPOSED = "grouped_bar_superposed"


class ValueMode(str, Enum):
    PERCENTAGE_WITH_TOTAL = "percentage_with_total"
    ABSOLUTE = "absolute"


class DataKind(str, Enum):
    TIME_SERIES = "time_series"
    FREQUENCY = "frequency"
    CATEGORICAL_PROPORTION = "categorical_proportion"
    CATEGORICAL_TIME_SERIES = "categorical_time_series"
    COMPOSITION_OVER_TIME = "composition_over_time"
    GROUP_COMPARISON_TIME_SERIES = "group_comparison_time_series"


@dataclass(frozen=True)
class ChartDefaults:
    chart_type: ChartType
    layout: str  # single | stacked | side_by_side


_CHART_DEFAULTS: dict[DataKind, ChartDefaults] = {
    DataKind.TIME_SERIES: ChartDefaults(ChartType.BAR, "single"),
    DataKind.FREQUENCY: ChartDefaults(ChartType.BAR, "single"),
    DataKind.CATEGORICAL_PROPORTION: ChartDefaults(ChartType.PIE, "single"),
    DataKind.CATEGORICAL_TIME_SERIES: ChartDefaults(ChartType.STACKED_AREA, "stacked"),
    DataKind.COMPOSITION_OVER_TIME: ChartDefaults(ChartType.STACKED_BAR, "stacked"),
    DataKind.GROUP_COMPARISON_TIME_SERIES: ChartDefaults(
        ChartType.GROUPED_BAR_SUPERPOSED, "side_by_side"
    ),
}


def default_chart_type(data_kind: DataKind) -> ChartDefaults:
    """Preferred chart type and comparison layout for a kind of data."""
    return _CHART_DEFAULTS[data_kind]


@dataclass(frozen=True)
class Series:
    name: str
    x: tuple[Union[float, str], ...]  # pies use category names on x
    y: tuple[float, ...]


@dataclass(frozen=True)
class ChartSpec:
    chart_type: ChartType
    series: tuple[Series, ...]
    value_mode: ValueMode
    legend: bool
    x_label: str
    y_label: str
    palette_id: str = PALETTE_ID

    def validate(self) -> None:
        if len(self.series) > 1 and not self.legend:
            raise ValueError("multi-series charts must carry a legend")
        if self.value_mode is ValueMode.PERCENTAGE_WITH_TOTAL:
            for point in zip(*(s.y for s in self.series)):
                if sum(point) > 100.0 + 1e-9:
                    raise ValueError(f"percentage series sum to {sum(point)} > 100")
            if self.chart_type is ChartType.STACKED_BAR and self.series:
                for point in zip(*(s.y for s in self.series)):
                    if abs(sum(point) - 100.0) > 1e-6:
                        raise ValueError(
                            "stacked composition must include a complement "
                            f"series reaching 100%, got {sum(point)}"
                        )


@dataclass(frozen=True)
class ChartItem:
    spec: ChartSpec
    caption: str
    alt_text: str


class Trend(str, Enum):
    UP = "up"
    DOWN = "down"
    FLAT = "flat"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class DimensionStat:
    stat: float
    trend: Trend
    delta_pct: Optional[float]


@dataclass(frozen=True)
class WeeklySummary:
    week_index: int
    dimensions: Mapping[str, DimensionStat]


@dataclass(frozen=True)
class ContentBundle:
    course_id: str
    week_range: tuple[int, int]
    page_id: PageId
    view: ViewMode
    charts: tuple[ChartItem, ...]
    stats: Mapping[str, object]
    generated_at: str
    meta: Mapping[str, object]

    def key(self) -> tuple[str, int, int, str, str]:
        return (
            self.course_id,
            self.week_range[0],
            self.week_range[1],
            self.page_id.value,
            self.view.value,
        )

    def validate(self) -> None:
        for item in self.charts:
            if not item.caption.strip():
                raise ValueError(f"{self.page_id.value}: chart without caption")
            if not item.alt_text.strip():
                raise ValueError(f"{self.page_id.value}: chart without alt text")
            item.spec.validate()


# --- weekly summary --------------------------------------------------------

def _dimension_stat_series(features: FeatureMatrixSet, dimension: Dimension) -> np.ndarray:
    if dimension is Dimension.REGULARITY:
        dow = features.cohort_weekly_mean(dimension, "dow_periodicity")
        hod = features.cohort_weekly_mean(dimension, "hod_periodicity")
        return (dow + hod) / 2
    primary = {
        Dimension.EFFORT: "time_online_hours",
        Dimension.CONSISTENCY: "mean_session_minutes",
        Dimension.PROACTIVITY: "mean_delay_days",
        Dimension.CONTROL: "pause_rate",
    }[dimension]
    return features.cohort_weekly_mean(dimension, primary)


def weekly_summary(features: FeatureMatrixSet, week_range: WeekRange) -> list[WeeklySummary]:
    """Cohort statistic per dimension and week, with week-over-week trend."""
    if not (
        features.week_range.first <= week_range.first
        and week_range.last <= features.week_range.last
    ):
        raise WeekRangeEmpty(
            f"summary range {week_range} outside features range {features.week_range}"
        )
    stat_series = {d: _dimension_stat_series(features, d) for d in Dimension}

    summaries: list[WeeklySummary] = []
    for w in week_range.indices():
        offset = features.week_range.offset(w)
        dims: dict[str, DimensionStat] = {}
        for d in Dimension:
            stat = float(stat_series[d][offset])
            if w == week_range.first:
                dims[d.value] = DimensionStat(stat, Trend.UNDEFINED, None)
                continue
            prev = float(stat_series[d][offset - 1])
            delta = stat - prev
            if delta == 0 or abs(delta) < FLAT_BAND * abs(prev):
                trend = Trend.FLAT
            elif delta > 0:
                trend = Trend.UP
            else:
                trend = Trend.DOWN
            delta_pct = 100.0 * delta / prev if prev != 0 else None
            dims[d.value] = DimensionStat(stat, trend, delta_pct)
        summaries.append(WeeklySummary(w, dims))
    return summaries


# --- captions and alt-texts -------------------------------------------------

_CHART_TYPE_NAMES = {
    ChartType.BAR: "Bar chart",
    ChartType.BAR_WITH_LINE: "Bar chart with line overlay",
    ChartType.LINE: "Line chart",
    ChartType.LINE_SD: "Line chart with standard-deviation band",
    ChartType.STACKED_AREA: "Stacked area chart",
    ChartType.PIE: "Pie chart",
    ChartType.STACKED_BAR: "Stacked bar chart",
    ChartType.GROUPED_BAR_SUPERPOSED: "Side-by-side grouped bar chart",
}


def _series_trend(y: Sequence[float]) -> str:
    if len(y) < 2:
        return "stable"
    delta = y[-1] - y[0]
    if delta == 0 or abs(delta) < FLAT_BAND * abs(y[0]):
        return "stable"
    return "rising" if delta > 0 else "falling"


def _fmt(v: float) -> str:
    return f"{v:.3g}"


def caption_and_alttext(spec: ChartSpec, title: str, week_range: tuple[int, int]) -> tuple[str, str]:
    """Deterministic caption and detailed alt text for one chart."""
    first, last = week_range
    if spec.chart_type is ChartType.PIE:
        caption = f"{title}."
    else:
        caption = f"{title}, weeks {first}–{last}."

    parts = [
        f"{_CHART_TYPE_NAMES[spec.chart_type]}.",
        f"X axis: {spec.x_label}.",
        f"Y axis: {spec.y_label}.",
    ]
    has_data = False
    for s in spec.series:
        if not s.y:
            continue
        has_data = True
        if spec.chart_type is ChartType.PIE:
            total = sum(s.y) or 1.0
            slices = ", ".join(
                f"{name} {100 * v / total:.0f}%" for name, v in zip(s.x, s.y)
            ) if all(isinstance(v, str) for v in s.x) else ", ".join(
                f"slice {i + 1}: {_fmt(v)}" for i, v in enumerate(s.y)
            )
            parts.append(f"Series '{s.name}': {slices}.")
            continue
        lo_i = int(np.argmin(s.y))
        hi_i = int(np.argmax(s.y))
        parts.append(
            f"Series '{s.name}': minimum {_fmt(s.y[lo_i])} at {spec.x_label} "
            f"{s.x[lo_i]:g}, maximum {_fmt(s.y[hi_i])} at {spec.x_label} "
            f"{s.x[hi_i]:g}, {_series_trend(s.y)} trend."
        )
    if not has_data:
        caption = f"{title}: no activity recorded in weeks {first}–{last}."
        parts.append("No data recorded.")
    return caption, " ".join(parts)


# --- chart assembly ---------------------------------------------------------

def _weeks_axis(week_range: WeekRange) -> tuple[float, ...]:
    return tuple(float(w) for w in week_range.indices())


def _week_slice(features: FeatureMatrixSet, week_range: WeekRange) -> list[int]:
    return [features.week_range.offset(w) for w in week_range.indices()]


def _y_with_total(label: str, roster_size: int) -> str:
    return f"{label} (% of {roster_size} students)"


def _make_chart(
    data_kind: DataKind,
    series: Sequence[Series],
    title: str,
    x_label: str,
    y_label: str,
    week_range: tuple[int, int],
    value_mode: ValueMode = ValueMode.ABSOLUTE,
) -> ChartItem:
    defaults = default_chart_type(data_kind)
    spec = ChartSpec(
        chart_type=defaults.chart_type,
        series=tuple(series),
        value_mode=value_mode,
        legend=len(series) > 1,
        x_label=x_label,
        y_label=y_label,
    )
    caption, alt_text = caption_and_alttext(spec, title, week_range)
    return ChartItem(spec, caption, alt_text)


_FEATURE_TITLES = {
    "time_online_hours": ("Average time online", "hours online"),
    "video_clicks": ("Average video clicks", "video clicks"),
    "mean_session_minutes": ("Average session length", "minutes per session"),
    "relative_time_online": ("Time online relative to the class", "ratio to class mean"),
    "dow_periodicity": ("Day-of-week regularity", "regularity score (0-1)"),
    "hod_periodicity": ("Hour-of-day regularity", "regularity score (0-1)"),
    "mean_delay_days": ("Average delay before watching lectures", "days after session"),
    "pause_rate": ("Average video pauses per hour", "pauses per hour"),
    "speed_changes": ("Average playback-speed changes", "speed changes"),
}


def _behavior_aggregated_charts(
    features: FeatureMatrixSet,
    dimension: Dimension,
    week_range: WeekRange,
    proactivity_cap_days: float,
) -> list[ChartItem]:
    charts = []
    span = (week_range.first, week_range.last)
    x = _weeks_axis(week_range)
    sel = _week_slice(features, week_range)
    for name in DIMENSION_FEATURES[dimension]:
        mean = features.cohort_weekly_mean(dimension, name)[sel]
        title, y_label = _FEATURE_TITLES[name]
        charts.append(
            _make_chart(
                DataKind.TIME_SERIES,
                [Series("class average", x, tuple(float(v) for v in mean))],
                title,
                "week",
                y_label,
                span,
            )
        )
    if dimension is Dimension.PROACTIVITY:
        charts.append(
            _proactivity_composition_chart(features, week_range, proactivity_cap_days)
        )
    return charts


def _proactivity_composition_chart(
    features: FeatureMatrixSet, week_range: WeekRange, cap_days: float
) -> ChartItem:
    """Weekly share of students watching early, late, or not at all.

    The 'did not watch' complement keeps each bar at 100%.
    """
    matrix = features.matrix(Dimension.PROACTIVITY, "mean_delay_days")
    n = len(features.roster)
    x = _weeks_axis(week_range)
    early, late, never = [], [], []
    for w in week_range.indices():
        col = matrix[:, features.week_range.offset(w)]
        early.append(100.0 * float(np.sum(col <= 0)) / n)
        late.append(100.0 * float(np.sum((col > 0) & (col < cap_days))) / n)
        never.append(100.0 * float(np.sum(col >= cap_days)) / n)
    series = [
        Series("watched before the session", x, tuple(early)),
        Series("watched after the session", x, tuple(late)),
        Series("did not watch", x, tuple(never)),
    ]
    return _make_chart(
        DataKind.COMPOSITION_OVER_TIME,
        series,
        "When students watch lecture videos",
        "week",
        _y_with_total("students", n),
        (week_range.first, week_range.last),
        value_mode=ValueMode.PERCENTAGE_WITH_TOTAL,
    )


def _behavior_groups_charts(
    features: FeatureMatrixSet,
    dimension: Dimension,
    clustering: DimensionClustering,
    week_range: WeekRange,
) -> list[ChartItem]:
    charts = []
    x = _weeks_axis(week_range)
    span = (week_range.first, week_range.last)
    sel = _week_slice(features, week_range)
    roster_index = {s: i for i, s in enumerate(features.roster)}
    cluster_ids = sorted(set(clustering.labels.values()))
    for name in DIMENSION_FEATURES[dimension]:
        matrix = features.matrix(dimension, name)
        series = []
        for cid in cluster_ids:
            rows = [roster_index[s] for s, lab in clustering.labels.items() if lab == cid]
            mean = matrix[rows].mean(axis=0)[sel]
            label = clustering.descriptors.get(cid, f"group {cid}")
            series.append(
                Series(
                    f"group {cid}: {label} (n={len(rows)})",
                    x,
                    tuple(float(v) for v in mean),
                )
            )
        title, y_label = _FEATURE_TITLES[name]
        charts.append(
            _make_chart(
                DataKind.GROUP_COMPARISON_TIME_SERIES,
                series,
                f"{title} by group",
                "week",
                y_label,
                span,
            )
        )
    return charts


# --- page builders ----------------------------------------------------------

def summary_page_content(
    course_id: str,
    features: FeatureMatrixSet,
    week_range: WeekRange,
    generated_at: str,
    meta: Mapping[str, object],
) -> ContentBundle:
    summaries = weekly_summary(features, week_range)
    x = _weeks_axis(week_range)
    span = (week_range.first, week_range.last)
    charts = []
    for d in Dimension:
        values = tuple(float(s.dimensions[d.value].stat) for s in summaries)
        title, y_label = {
            Dimension.EFFORT: ("Weekly effort", "hours online"),
            Dimension.CONSISTENCY: ("Weekly session length", "minutes per session"),
            Dimension.REGULARITY: ("Weekly regularity", "regularity score (0-1)"),
            Dimension.PROACTIVITY: ("Weekly lecture delay", "days after session"),
            Dimension.CONTROL: ("Weekly video control", "pauses per hour"),
        }[d]
        charts.append(
            _make_chart(
                DataKind.TIME_SERIES,
                [Series("class average", x, values)],
                title,
                "week",
                y_label,
                span,
            )
        )
    stats = {
        "weeks": [
            {
                "week_index": s.week_index,
                "dimensions": {
                    name: {
                        "stat": ds.stat,
                        "trend": ds.trend.value,
                        "delta_pct": ds.delta_pct,
                    }
                    for name, ds in s.dimensions.items()
                },
            }
            for s in summaries
        ]
    }
    return ContentBundle(
        course_id=course_id,
        week_range=span,
        page_id=PageId.SUMMARY,
        view=ViewMode.AGGREGATED,
        charts=tuple(charts),
        stats=stats,
        generated_at=generated_at,
        meta=meta,
    )


def profile_page_content(
    course_id: str,
    profiles: Sequence[StudentProfile],
    clusterings: Mapping[Dimension, DimensionClustering],
    features: FeatureMatrixSet,
    week_range: WeekRange,
    generated_at: str,
    meta: Mapping[str, object],
) -> ContentBundle:
    """Profile descriptions with grades, a size pie, and weekly activity."""
    n = len(features.roster)
    span = (week_range.first, week_range.last)

    blocks = []
    for p in sorted(profiles, key=lambda p: p.profile_id):
        descriptor = profile_descriptor_text(p, clusterings)
        description = "; ".join(
            f"{dim.value}: {descriptor[dim.value]}" for dim in DIMENSION_ORDER
        )
        blocks.append(
            {
                "profile_id": p.profile_id,
                "description": description,
                "member_count": p.size,
                "grade_mean": p.grade_mean,
                "grade_sd": p.grade_sd,
            }
        )

    pie_series = Series(
        "profile share",
        tuple(f"profile {p.profile_id}" for p in profiles),
        tuple(100.0 * p.size / n for p in profiles),
    )
    pie = _make_chart(
        DataKind.CATEGORICAL_PROPORTION,
        [pie_series],
        "Share of students per profile",
        "profile",
        _y_with_total("students", n),
        span,
        value_mode=ValueMode.PERCENTAGE_WITH_TOTAL,
    )

    activity = _profile_activity_chart(profiles, features, week_range, n)
    return ContentBundle(
        course_id=course_id,
        week_range=span,
        page_id=PageId.PROFILES,
        view=ViewMode.AGGREGATED,
        charts=(pie, activity),
        stats={"profiles": blocks},
        generated_at=generated_at,
        meta=meta,
    )


def _profile_activity_chart(
    profiles: Sequence[StudentProfile],
    features: FeatureMatrixSet,
    week_range: WeekRange,
    roster_size: int,
) -> ChartItem:
    """Weekly share of active students per profile (stacked area)."""
    hours = features.matrix(Dimension.EFFORT, "time_online_hours")
    roster_index = {s: i for i, s in enumerate(features.roster)}
    x = _weeks_axis(week_range)
    series = []
    for p in sorted(profiles, key=lambda p: p.profile_id):
        rows = [roster_index[s] for s in p.members]
        values = []
        for w in week_range.indices():
            col = hours[rows, features.week_range.offset(w)]
            values.append(100.0 * float(np.sum(col > 0)) / roster_size)
        series.append(Series(f"profile {p.profile_id}", x, tuple(values)))
    return _make_chart(
        DataKind.CATEGORICAL_TIME_SERIES,
        series,
        "Active students per profile over time",
        "week",
        _y_with_total("active students", roster_size),
        (week_range.first, week_range.last),
        value_mode=ValueMode.PERCENTAGE_WITH_TOTAL,
    )


def behavior_page_content(
    course_id: str,
    page: PageId,
    view: ViewMode,
    features: FeatureMatrixSet,
    clusterings: Mapping[Dimension, DimensionClustering],
    week_range: WeekRange,
    generated_at: str,
    meta: Mapping[str, object],
    proactivity_cap_days: float = 14.0,
) -> ContentBundle:
    dimension = BEHAVIOR_PAGES[page]
    if view is ViewMode.AGGREGATED:
        charts = _behavior_aggregated_charts(
            features, dimension, week_range, proactivity_cap_days
        )
        sel = _week_slice(features, week_range)
        stats: dict[str, object] = {
            "cohort_weekly_mean": {
                name: [float(v) for v in features.cohort_weekly_mean(dimension, name)[sel]]
                for name in DIMENSION_FEATURES[dimension]
            }
        }
    else:
        clustering = clusterings[dimension]
        charts = _behavior_groups_charts(features, dimension, clustering, week_range)
        stats = {
            "groups": [
                {
                    "label": cid,
                    "descriptor": clustering.descriptors.get(cid, ""),
                    "size": sum(1 for v in clustering.labels.values() if v == cid),
                    "feature_means": clustering.feature_means.get(cid, {}),
                }
                for cid in sorted(set(clustering.labels.values()))
            ]
        }
    return ContentBundle(
        course_id=course_id,
        week_range=(week_range.first, week_range.last),
        page_id=page,
        view=view,
        charts=tuple(charts),
        stats=stats,
        generated_at=generated_at,
        meta=meta,
    )


def build_all_content(
    course_id: str,
    week_range: WeekRange,
    features: FeatureMatrixSet,
    clusterings: Mapping[Dimension, DimensionClustering],
    profiles: Sequence[StudentProfile],
    generated_at: str,
    meta: Mapping[str, object],
    proactivity_cap_days: float = 14.0,
) -> list[ContentBundle]:
    """One bundle per (page, view) key; all invariants checked before return."""
    bundles = [
        summary_page_content(course_id, features, week_range, generated_at, meta),
        profile_page_content(
            course_id, profiles, clusterings, features, week_range, generated_at, meta
        ),
    ]
    for page in BEHAVIOR_PAGES:
        for view in (ViewMode.AGGREGATED, ViewMode.GROUPS):
            bundles.append(
                behavior_page_content(
                    course_id,
                    page,
                    view,
                    features,
                    clusterings,
                    week_range,
                    generated_at,
                    meta,
                    proactivity_cap_days,
                )
            )
    for bundle in bundles:
        bundle.validate()
    return bundles


# --- serialization (wire payload, schema v1) ---------------------------------

def bundle_to_dict(bundle: ContentBundle) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "course_id": bundle.course_id,
        "week_range": list(bundle.week_range),
        "page_id": bundle.page_id.value,
        "view": bundle.view.value,
        "generated_at": bundle.generated_at,
        "meta": dict(bundle.meta),
        "stats": bundle.stats,
        "charts": [
            {
                "spec": {
                    "chart_type": item.spec.chart_type.value,
                    "series": [
                        {"name": s.name, "x": list(s.x), "y": list(s.y)}
                        for s in item.spec.series
                    ],
                    "value_mode": item.spec.value_mode.value,
                    "legend": item.spec.legend,
                    "x_label": item.spec.x_label,
                    "y_label": item.spec.y_label,
                    "palette_id": item.spec.palette_id,
                },
                "caption": item.caption,
                "alt_text": item.alt_text,
            }
            for item in bundle.charts
        ],
    }


def bundle_to_json(bundle: ContentBundle) -> str:
    return json.dumps(bundle_to_dict(bundle), sort_keys=True, separators=(",", ":"))


def bundle_from_dict(data: Mapping) -> ContentBundle:
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported bundle schema version {version!r}")
    charts = tuple(
        ChartItem(
            spec=ChartSpec(
                chart_type=ChartType(item["spec"]["chart_type"]),
                series=tuple(
                    Series(s["name"], tuple(s["x"]), tuple(s["y"]))
                    for s in item["spec"]["series"]
                ),
                value_mode=ValueMode(item["spec"]["value_mode"]),
                legend=item["spec"]["legend"],
                x_label=item["spec"]["x_label"],
                y_label=item["spec"]["y_label"],
                palette_id=item["spec"]["palette_id"],
            ),
            caption=item["caption"],
            alt_text=item["alt_text"],
        )
        for item in data["charts"]
    )
    return ContentBundle(
        course_id=data["course_id"],
        week_range=(data["week_range"][0], data["week_range"][1]),
        page_id=PageId(data["page_id"]),
        view=ViewMode(data["view"]),
        charts=charts,
        stats=data["stats"],
        generated_at=data["generated_at"],
        meta=data["meta"],
    )


def bundle_from_json(payload: str) -> ContentBundle:
    return bundle_from_dict(json.loads(payload))
