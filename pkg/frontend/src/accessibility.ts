// Colorblind-safe palettes, theme switching, contrast math, and the
// chart accessibility audit used by both tests and the dev console.

import type { Theme } from "./state.js";

// Okabe-Ito palette; safe for the common color-vision deficiencies.
export const LIGHT_PALETTE = [
  "#0072B2",
  "#D55E00",
  "#009E73",
  "#CC79A7",
  "#56B4E9",
  "#E69F00",
  "#999999",
  "#F0E442",
] as const;

// lightened variants that keep >= 3:1 contrast on the dark background
export const DARK_PALETTE = [
  "#56B4E9",
  "#F08A4B",
  "#34D19D",
  "#E9A3CC",
  "#8CCBF2",
  "#F5C242",
  "#C0C0C0",
  "#F5ED70",
] as const;

export const LIGHT_BACKGROUND = "#FFFFFF";
export const DARK_BACKGROUND = "#121212";

export function paletteFor(theme: Theme): readonly string[] {
  return theme === "dark" ? DARK_PALETTE : LIGHT_PALETTE;
}

export function backgroundFor(theme: Theme): string {
  return theme === "dark" ? DARK_BACKGROUND : LIGHT_BACKGROUND;
}

function channel(value: number): number {
  const c = value / 255;
  return c <= 0.03928 ? c / 12.92 : Math.pow((c + 0.055) / 1.055, 2.4);
}

export function relativeLuminance(hex: string): number {
  const raw = hex.replace("#", "");
  const r = parseInt(raw.slice(0, 2), 16);
  const g = parseInt(raw.slice(2, 4), 16);
  const b = parseInt(raw.slice(4, 6), 16);
  return 0.2126 * channel(r) + 0.7152 * channel(g) + 0.0722 * channel(b);
}

export function contrastRatio(a: string, b: string): number {
  const la = relativeLuminance(a);
  const lb = relativeLuminance(b);
  const [hi, lo] = la >= lb ? [la, lb] : [lb, la];
  return (hi + 0.05) / (lo + 0.05);
}

export function applyTheme(root: HTMLElement, theme: Theme): void {
  root.dataset.theme = theme;
  root.classList.toggle("dark", theme === "dark");
}

export interface AccessibilityAudit {
  charts: number;
  missingCaption: number;
  missingAltText: number;
  problems: string[];
}

// every chart figure must carry a non-empty figcaption and an svg chart
// node exposing a non-empty accessible name
export function auditChartAccessibility(root: ParentNode): AccessibilityAudit {
  const figures = Array.from(root.querySelectorAll("figure.chart-figure"));
  const audit: AccessibilityAudit = {
    charts: figures.length,
    missingCaption: 0,
    missingAltText: 0,
    problems: [],
  };
  figures.forEach((figure, index) => {
    const caption = figure.querySelector("figcaption");
    if (!caption || !(caption.textContent ?? "").trim()) {
      audit.missingCaption += 1;
      audit.problems.push(`figure ${index}: empty or missing caption`);
    }
    const svg = figure.querySelector("svg[role='img']");
    if (!svg || !(svg.getAttribute("aria-label") ?? "").trim()) {
      audit.missingAltText += 1;
      audit.problems.push(`figure ${index}: empty or missing alt text`);
    }
  });
  return audit;
}
