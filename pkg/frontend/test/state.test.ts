// View-state transitions.

import { describe, expect, it } from "vitest";
import {
  hasGroupsView,
  initialState,
  isPageId,
  navigate,
  NAV_ORDER,
  selectCourse,
  selectWeekRange,
  toggleTheme,
  toggleView,
} from "../src/state.js";

describe("view state", () => {
  it("starts on the summary page in aggregated view", () => {
    expect(initialState.page).toBe("summary");
    expect(initialState.view).toBe("aggregated");
    expect(initialState.theme).toBe("default");
  });

  it("has exactly the seven menu pages", () => {
    expect(NAV_ORDER.length).toBe(7);
    expect(isPageId("effort")).toBe(true);
    expect(isPageId("settings")).toBe(false);
  });

  it("overview pages have no groups view", () => {
    expect(hasGroupsView("summary")).toBe(false);
    expect(hasGroupsView("profiles")).toBe(false);
    expect(hasGroupsView("effort")).toBe(true);
  });

  it("navigating to an overview page resets the groups toggle", () => {
    let state = navigate(initialState, "effort");
    state = toggleView(state);
    expect(state.view).toBe("groups");
    state = navigate(state, "summary");
    expect(state.view).toBe("aggregated");
    state = navigate(state, "control");
    expect(state.view).toBe("aggregated");
  });

  it("toggleView is a no-op on overview pages", () => {
    const state = navigate(initialState, "profiles");
    expect(toggleView(state)).toBe(state);
  });

  it("selects course and week range", () => {
    let state = selectCourse(initialState, "demo-course", [1, 4]);
    expect(state.courseId).toBe("demo-course");
    state = selectWeekRange(state, 2, 3);
    expect(state.weekRange).toEqual([2, 3]);
    expect(() => selectWeekRange(state, 5, 2)).toThrow(RangeError);
  });

  it("theme toggles between default and dark", () => {
    const dark = toggleTheme(initialState);
    expect(dark.theme).toBe("dark");
    expect(toggleTheme(dark).theme).toBe("default");
  });
});
