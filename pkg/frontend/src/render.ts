// Page rendering: ContentBundle -> HTML string.

import { esc, renderChart } from "./charts.js";
import { NAV_ORDER, hasGroupsView, type PageId, type ViewState } from "./state.js";
import {
  SUPPORTED_SCHEMA_VERSION,
  type ContentBundleData,
  type DimensionStatData,
  type ProfileBlockData,
  type WeeklySummaryData,
} from "./types.js";

export const PAGE_TITLES: Record<PageId, string> = {
  summary: "Summary",
  profiles: "Student Profiles",
  proactivity: "Proactivity",
  effort: "Effort",
  consistency: "Consistency",
  control: "Control",
  regularity: "Regularity",
};

const TREND_ARROWS: Record<DimensionStatData["trend"], string> = {
  up: "↑",
  down: "↓",
  flat: "→",
  undefined: "–",
};

export function schemaMismatchBanner(version: string): string {
  return (
    `<div class="banner banner-error" role="alert">` +
    `This dashboard understands content version ${SUPPORTED_SCHEMA_VERSION}, ` +
    `but the server sent ${esc(version || "an unversioned document")}. ` +
    `Please refresh after the service is updated.</div>`
  );
}

function trendCard(name: string, stat: DimensionStatData): string {
  const delta =
    stat.delta_pct === null || stat.trend === "undefined"
      ? ""
      : `<span class="delta">${stat.delta_pct >= 0 ? "+" : ""}${stat.delta_pct.toFixed(1)}% vs previous week</span>`;
  const arrowTitle = `trend ${stat.trend}`;
  return (
    `<div class="stat-card" data-dimension="${esc(name)}">` +
    `<h3>${esc(name)}</h3>` +
    `<p class="stat-value">${Number(stat.stat.toFixed(2))}` +
    `<span class="trend trend-${stat.trend}" role="img" aria-label="${arrowTitle}">${TREND_ARROWS[stat.trend]}</span></p>` +
    delta +
    `</div>`
  );
}

function summaryCards(weeks: WeeklySummaryData[]): string {
  if (!weeks.length) return "";
  const latest = weeks[weeks.length - 1];
  const cards = Object.entries(latest.dimensions)
    .map(([name, stat]) => trendCard(name, stat))
    .join("");
  return (
    `<section class="stat-cards" aria-label="weekly statistics for week ${latest.week_index}">` +
    cards +
    `</section>`
  );
}

function gradeText(block: ProfileBlockData): string {
  if (block.grade_mean === null) {
    return "no grades recorded";
  }
  const sd = block.grade_sd === null ? "" : ` ± ${block.grade_sd.toFixed(1)}`;
  return `average grade ${block.grade_mean.toFixed(1)}${sd}`;
}

function profileBlocks(profiles: ProfileBlockData[]): string {
  const blocks = profiles
    .map(
      (p) =>
        `<article class="profile-block" data-profile="${p.profile_id}">` +
        `<h3>Profile ${p.profile_id}</h3>` +
        `<p class="profile-size">${p.member_count} students, ${gradeText(p)}</p>` +
        `<p class="profile-description">${esc(p.description)}</p>` +
        `</article>`,
    )
    .join("");
  return `<section class="profile-blocks">${blocks}</section>`;
}

export function renderPage(bundle: ContentBundleData, theme: ViewState["theme"]): string {
  if (bundle.schema_version !== SUPPORTED_SCHEMA_VERSION) {
    return schemaMismatchBanner(bundle.schema_version);
  }
  const parts: string[] = [];
  const title = PAGE_TITLES[bundle.page_id as PageId] ?? bundle.page_id;
  const viewNote = bundle.view === "groups" ? " (groups view)" : "";
  parts.push(
    `<header class="page-header"><h2>${esc(title)}${viewNote}</h2>` +
      `<p class="page-range">Weeks ${bundle.week_range[0]}–${bundle.week_range[1]}</p></header>`,
  );
  if (bundle.page_id === "summary" && bundle.stats.weeks) {
    parts.push(summaryCards(bundle.stats.weeks));
  }
  if (bundle.page_id === "profiles" && bundle.stats.profiles) {
    parts.push(profileBlocks(bundle.stats.profiles));
  }
  parts.push(
    `<section class="charts">` +
      bundle.charts.map((item) => renderChart(item, theme)).join("") +
      `</section>`,
  );
  return parts.join("");
}

export function renderNav(state: ViewState): string {
  const items = NAV_ORDER.map((page) => {
    const current = page === state.page ? ` aria-current="page"` : "";
    return (
      `<li><a href="#/${page}" data-page="${page}"${current}>` +
      `${esc(PAGE_TITLES[page])}</a></li>`
    );
  }).join("");
  return `<nav aria-label="dashboard pages"><ul class="nav-list">${items}</ul></nav>`;
}

export function renderViewToggle(state: ViewState): string {
  if (!hasGroupsView(state.page)) return "";
  const pressed = state.view === "groups";
  return (
    `<button type="button" class="view-toggle" aria-pressed="${pressed}">` +
    `${pressed ? "Show class overview" : "Show groups"}</button>`
  );
}

export function renderHelpButton(topic: string): string {
  return (
    `<button type="button" class="help-button" data-help-topic="${esc(topic)}" ` +
    `aria-label="help about ${esc(topic)}">?</button>`
  );
}

export function renderError(message: string): string {
  return `<div class="banner banner-error" role="alert">${esc(message)}</div>`;
}
