// Browser bootstrap: routing, data loading, toggles, help popovers,
// and usage telemetry wiring.

import { ApiClient, ApiError } from "./api.js";
import { applyTheme } from "./accessibility.js";
import {
  renderError,
  renderHelpButton,
  renderNav,
  renderPage,
  renderViewToggle,
} from "./render.js";
import {
  initialState,
  isPageId,
  navigate,
  selectCourse,
  selectWeekRange,
  toggleTheme,
  toggleView,
  type ViewState,
} from "./state.js";
import { UsageTracker } from "./usage.js";

function baseUrl(): string {
  const meta = document.querySelector<HTMLMetaElement>('meta[name="srlboard-base-url"]');
  return meta?.content ?? "";
}

export function usagePageId(state: ViewState): string {
  return state.view === "groups" ? `${state.page}_groups` : state.page;
}

export async function boot(root: HTMLElement): Promise<void> {
  const api = new ApiClient(baseUrl());
  const tracker = new UsageTracker((events) => api.postUsage(events));
  let state: ViewState = { ...initialState };

  const nav = document.createElement("div");
  const controls = document.createElement("div");
  controls.className = "controls";
  const content = document.createElement("main");
  content.id = "content";
  root.append(nav, controls, content);

  async function loadCourses(): Promise<void> {
    const body = await api.getCourses();
    if (!body.courses.length) {
      content.innerHTML = renderError(
        "Nothing published yet. Run the pipeline, then refresh.",
      );
      return;
    }
    const course = body.courses[0];
    const range = course.week_ranges[course.week_ranges.length - 1];
    state = selectCourse(state, course.course_id, [range[0], range[1]]);
  }

  function renderControls(): void {
    if (!state.courseId || !state.weekRange) {
      controls.innerHTML = "";
      return;
    }
    controls.innerHTML =
      `<label>Course <select class="course-select">` +
      `<option>${state.courseId}</option></select></label>` +
      `<label>Weeks <input class="week-from" type="number" value="${state.weekRange[0]}" size="3">` +
      `–<input class="week-to" type="number" value="${state.weekRange[1]}" size="3"></label>` +
      renderViewToggle(state) +
      `<button type="button" class="theme-toggle" aria-pressed="${state.theme === "dark"}">` +
      `${state.theme === "dark" ? "Light mode" : "Dark contrast mode"}</button>` +
      renderHelpButton(state.page) +
      renderHelpButton("views");
  }

  async function showPage(): Promise<void> {
    nav.innerHTML = renderNav(state);
    renderControls();
    if (!state.courseId || !state.weekRange) return;
    tracker.pageEnter(usagePageId(state));
    try {
      const bundle = await api.getContent(
        state.courseId,
        state.weekRange[0],
        state.weekRange[1],
        state.page,
        state.view,
      );
      content.innerHTML = renderPage(bundle, state.theme);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        content.innerHTML = renderError(
          `No published content for weeks ${state.weekRange[0]}–${state.weekRange[1]}.`,
        );
      } else {
        content.innerHTML = renderError(`Could not load the page: ${String(error)}`);
      }
    }
    void tracker.flushWithRetry().catch(() => undefined);
  }

  async function showHelp(topic: string, anchor: HTMLElement): Promise<void> {
    document.querySelectorAll(".help-popover").forEach((node) => node.remove());
    const popover = document.createElement("div");
    popover.className = "help-popover";
    popover.setAttribute("role", "note");
    try {
      const help = await api.getHelp(topic);
      popover.textContent = help.text;
    } catch {
      popover.textContent = "No help available for this element.";
    }
    anchor.insertAdjacentElement("afterend", popover);
  }

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const link = target.closest("a[data-page]");
    if (link) {
      event.preventDefault();
      const page = link.getAttribute("data-page") ?? "summary";
      if (isPageId(page)) {
        state = navigate(state, page);
        window.location.hash = `#/${page}`;
        void showPage();
      }
      return;
    }
    if (target.closest(".view-toggle")) {
      state = toggleView(state);
      void showPage();
      return;
    }
    if (target.closest(".theme-toggle")) {
      state = toggleTheme(state);
      applyTheme(document.documentElement, state.theme);
      void showPage();
      return;
    }
    const helpButton = target.closest<HTMLElement>(".help-button");
    if (helpButton) {
      void showHelp(helpButton.dataset.helpTopic ?? state.page, helpButton);
    }
  });

  controls.addEventListener("change", (event) => {
    const target = event.target as HTMLInputElement;
    if (!target.matches(".week-from, .week-to")) return;
    const from = Number(controls.querySelector<HTMLInputElement>(".week-from")?.value);
    const to = Number(controls.querySelector<HTMLInputElement>(".week-to")?.value);
    if (Number.isFinite(from) && Number.isFinite(to) && from <= to) {
      state = selectWeekRange(state, from, to);
      void showPage();
    }
  });

  // close the open visit when the tab goes away; retry delivery on return
  document.addEventListener("visibilitychange", () => {
    if (document.visibilityState === "hidden") {
      tracker.pageLeave();
      void tracker.flush().catch(() => undefined);
    }
  });
  window.addEventListener("online", () => {
    void tracker.flushWithRetry().catch(() => undefined);
  });

  const fromHash = window.location.hash.replace(/^#\//, "");
  if (isPageId(fromHash)) {
    state = navigate(state, fromHash);
  }
  applyTheme(document.documentElement, state.theme);
  try {
    await loadCourses();
  } catch (error) {
    content.innerHTML = renderError(`Analytics service unreachable: ${String(error)}`);
    return;
  }
  await showPage();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app") as HTMLElement);
}
