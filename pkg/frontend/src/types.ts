// Wire types for the analytics API (bundle schema v1).

export const SUPPORTED_SCHEMA_VERSION = "v1";

export type ChartTypeName =
  | "bar"
  | "bar_with_line"
  | "line"
  | "line_sd"
  | "stacked_area"
  | "pie"
  | "stacked_bar"
  | "grouped_bar_superposed";

export type ValueModeName = "percentage_with_total" | "absolute";

export interface SeriesData {
  name: string;
  x: (number | string)[];
  y: number[];
}

export interface ChartSpecData {
  chart_type: ChartTypeName;
  series: SeriesData[];
  value_mode: ValueModeName;
  legend: boolean;
  x_label: string;
  y_label: string;
  palette_id: string;
}

export interface ChartItemData {
  spec: ChartSpecData;
  caption: string;
  alt_text: string;
}

export interface DimensionStatData {
  stat: number;
  trend: "up" | "down" | "flat" | "undefined";
  delta_pct: number | null;
}

export interface WeeklySummaryData {
  week_index: number;
  dimensions: Record<string, DimensionStatData>;
}

export interface ProfileBlockData {
  profile_id: number;
  description: string;
  member_count: number;
  grade_mean: number | null;
  grade_sd: number | null;
}

export interface ContentBundleData {
  schema_version: string;
  course_id: string;
  week_range: [number, number];
  page_id: string;
  view: string;
  generated_at: string;
  meta: Record<string, unknown>;
  stats: {
    weeks?: WeeklySummaryData[];
    profiles?: ProfileBlockData[];
    [key: string]: unknown;
  };
  charts: ChartItemData[];
}

export interface CourseInfo {
  course_id: string;
  week_ranges: [number, number][];
}

export interface CoursesResponse {
  generation: number;
  courses: CourseInfo[];
}

export interface HelpResponse {
  topic: string;
  text: string;
}

export interface UsageEventData {
  session_id: string;
  page_id: string;
  entered_at: string;
  left_at: string;
}

export interface UsageAccepted {
  accepted: number;
}

export interface UsageReport {
  dwell: {
    page_id: string;
    mean_seconds: number;
    sd_seconds: number;
    visit_count: number;
  }[];
  min_p: number;
  edges: { from: string; to: string; p: number }[];
  pages: string[];
}
