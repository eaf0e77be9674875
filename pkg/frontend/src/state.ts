// Dashboard view state and its pure transitions.

export const NAV_ORDER = [
  "summary",
  "profiles",
  "proactivity",
  "effort",
  "consistency",
  "control",
  "regularity",
] as const;

export type PageId = (typeof NAV_ORDER)[number];
export type ViewModeName = "aggregated" | "groups";
export type Theme = "default" | "dark";

const OVERVIEW_PAGES: ReadonlySet<string> = new Set(["summary", "profiles"]);

export interface ViewState {
  courseId: string | null;
  weekRange: [number, number] | null;
  page: PageId;
  view: ViewModeName;
  theme: Theme;
}

export const initialState: ViewState = {
  courseId: null,
  weekRange: null,
  page: "summary",
  view: "aggregated",
  theme: "default",
};

export function isPageId(value: string): value is PageId {
  return (NAV_ORDER as readonly string[]).includes(value);
}

export function hasGroupsView(page: PageId): boolean {
  return !OVERVIEW_PAGES.has(page);
}

export function navigate(state: ViewState, page: PageId): ViewState {
  const view = hasGroupsView(page) ? state.view : "aggregated";
  return { ...state, page, view };
}

export function selectCourse(
  state: ViewState,
  courseId: string,
  weekRange: [number, number],
): ViewState {
  return { ...state, courseId, weekRange };
}

export function selectWeekRange(state: ViewState, from: number, to: number): ViewState {
  if (from > to) {
    throw new RangeError(`week range ${from}-${to} is empty`);
  }
  return { ...state, weekRange: [from, to] };
}

export function toggleView(state: ViewState): ViewState {
  if (!hasGroupsView(state.page)) {
    return state;
  }
  return { ...state, view: state.view === "aggregated" ? "groups" : "aggregated" };
}

export function toggleTheme(state: ViewState): ViewState {
  return { ...state, theme: state.theme === "default" ? "dark" : "default" };
}
