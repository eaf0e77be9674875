// SVG chart rendering for ContentBundle chart specs.
//
// Every chart renders into a <figure class="chart-figure"> containing an
// <svg role="img" aria-label=...> and a <figcaption>; the alt text rides
// on the svg node, the caption sits directly below the chart.

import { paletteFor } from "./accessibility.js";
import type { Theme } from "./state.js";
import type { ChartItemData, ChartSpecData, SeriesData } from "./types.js";

const WIDTH = 640;
const HEIGHT = 400;
const PLOT = { left: 56, right: 624, top: 16, bottom: 300 };

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function fmt(value: number): string {
  if (!Number.isFinite(value)) return "0";
  const rounded = Math.round(value * 100) / 100;
  return String(rounded);
}

function hasData(spec: ChartSpecData): boolean {
  return spec.series.some((s) => s.y.length > 0);
}

function yDomain(spec: ChartSpecData): [number, number] {
  const stacked =
    spec.chart_type === "stacked_area" || spec.chart_type === "stacked_bar";
  let lo = 0;
  let hi = 1e-9;
  const slots = Math.max(...spec.series.map((s) => s.y.length), 0);
  for (let i = 0; i < slots; i++) {
    let total = 0;
    for (const s of spec.series) {
      const v = s.y[i] ?? 0;
      if (stacked) {
        total += v;
      } else {
        hi = Math.max(hi, v);
        lo = Math.min(lo, v);
      }
    }
    if (stacked) hi = Math.max(hi, total);
  }
  return [Math.min(lo, 0), hi * 1.05];
}

function yScale(domain: [number, number]): (v: number) => number {
  const [lo, hi] = domain;
  const span = hi - lo || 1;
  return (v) => PLOT.bottom - ((v - lo) / span) * (PLOT.bottom - PLOT.top);
}

function slotX(index: number, slots: number): [number, number] {
  const width = (PLOT.right - PLOT.left) / Math.max(slots, 1);
  const x0 = PLOT.left + index * width;
  return [x0, width];
}

function axes(spec: ChartSpecData, domain: [number, number]): string {
  const sy = yScale(domain);
  const parts: string[] = [];
  parts.push(
    `<line class="axis" x1="${PLOT.left}" y1="${PLOT.bottom}" x2="${PLOT.right}" y2="${PLOT.bottom}"/>`,
    `<line class="axis" x1="${PLOT.left}" y1="${PLOT.top}" x2="${PLOT.left}" y2="${PLOT.bottom}"/>`,
  );
  for (let i = 0; i <= 4; i++) {
    const v = domain[0] + ((domain[1] - domain[0]) * i) / 4;
    parts.push(
      `<text class="tick" x="${PLOT.left - 6}" y="${sy(v) + 4}" text-anchor="end">${fmt(v)}</text>`,
    );
  }
  const first = spec.series.find((s) => s.x.length);
  if (first) {
    first.x.forEach((label, i) => {
      const [x0, width] = slotX(i, first.x.length);
      parts.push(
        `<text class="tick" x="${x0 + width / 2}" y="${PLOT.bottom + 18}" text-anchor="middle">${esc(String(label))}</text>`,
      );
    });
  }
  parts.push(
    `<text class="axis-label" x="${(PLOT.left + PLOT.right) / 2}" y="${PLOT.bottom + 40}" text-anchor="middle">${esc(spec.x_label)}</text>`,
    `<text class="axis-label" x="14" y="${(PLOT.top + PLOT.bottom) / 2}" text-anchor="middle" transform="rotate(-90 14 ${(PLOT.top + PLOT.bottom) / 2})">${esc(spec.y_label)}</text>`,
  );
  return parts.join("");
}

function legend(spec: ChartSpecData, colors: readonly string[]): string {
  if (!spec.legend) return "";
  const rows = spec.series.map((s, i) => {
    const x = PLOT.left + (i % 2) * 290;
    const y = 330 + Math.floor(i / 2) * 20;
    return (
      `<rect class="legend-swatch" x="${x}" y="${y - 10}" width="12" height="12" fill="${colors[i % colors.length]}"/>` +
      `<text class="legend-label" x="${x + 18}" y="${y}">${esc(s.name)}</text>`
    );
  });
  return `<g class="legend" role="list">${rows.join("")}</g>`;
}

function bars(
  series: SeriesData[],
  domain: [number, number],
  colors: readonly string[],
  grouped: boolean,
): string {
  const sy = yScale(domain);
  const zero = sy(Math.max(domain[0], 0));
  const parts: string[] = [];
  const slots = Math.max(...series.map((s) => s.y.length));
  for (let i = 0; i < slots; i++) {
    const [x0, width] = slotX(i, slots);
    const inner = width * 0.72;
    const barWidth = grouped ? inner / series.length : inner;
    series.forEach((s, k) => {
      const v = s.y[i];
      if (v === undefined) return;
      const x = x0 + width * 0.14 + (grouped ? k * barWidth : 0);
      const top = Math.min(sy(v), zero);
      const h = Math.abs(sy(v) - zero);
      parts.push(
        `<rect class="bar" x="${fmt(x)}" y="${fmt(top)}" width="${fmt(Math.max(barWidth - 2, 1))}" height="${fmt(h)}" fill="${colors[k % colors.length]}"><title>${esc(s.name)}: ${fmt(v)}</title></rect>`,
      );
    });
  }
  return parts.join("");
}

function polyline(s: SeriesData, domain: [number, number], color: string): string {
  const sy = yScale(domain);
  const points = s.y
    .map((v, i) => {
      const [x0, width] = slotX(i, s.y.length);
      return `${fmt(x0 + width / 2)},${fmt(sy(v))}`;
    })
    .join(" ");
  return `<polyline class="line" points="${points}" fill="none" stroke="${color}" stroke-width="2.5"/>`;
}

function lines(series: SeriesData[], domain: [number, number], colors: readonly string[]): string {
  return series.map((s, k) => polyline(s, domain, colors[k % colors.length])).join("");
}

function sdBand(
  mean: SeriesData,
  sd: SeriesData,
  domain: [number, number],
  color: string,
): string {
  const sy = yScale(domain);
  const upper = mean.y.map((v, i) => {
    const [x0, width] = slotX(i, mean.y.length);
    return `${fmt(x0 + width / 2)},${fmt(sy(v + (sd.y[i] ?? 0)))}`;
  });
  const lower = mean.y
    .map((v, i) => {
      const [x0, width] = slotX(i, mean.y.length);
      return `${fmt(x0 + width / 2)},${fmt(sy(v - (sd.y[i] ?? 0)))}`;
    })
    .reverse();
  return `<polygon class="sd-band" points="${[...upper, ...lower].join(" ")}" fill="${color}" opacity="0.25"/>`;
}

function stackedArea(
  series: SeriesData[],
  domain: [number, number],
  colors: readonly string[],
): string {
  const sy = yScale(domain);
  const slots = Math.max(...series.map((s) => s.y.length));
  const base = new Array(slots).fill(0);
  const parts: string[] = [];
  series.forEach((s, k) => {
    const tops = s.y.map((v, i) => base[i] + v);
    const upper = tops.map((v, i) => {
      const [x0, width] = slotX(i, slots);
      return `${fmt(x0 + width / 2)},${fmt(sy(v))}`;
    });
    const lower = base
      .map((v, i) => {
        const [x0, width] = slotX(i, slots);
        return `${fmt(x0 + width / 2)},${fmt(sy(v))}`;
      })
      .reverse();
    parts.push(
      `<polygon class="area" points="${[...upper, ...lower].join(" ")}" fill="${colors[k % colors.length]}" opacity="0.85"><title>${esc(s.name)}</title></polygon>`,
    );
    tops.forEach((v, i) => (base[i] = v));
  });
  return parts.join("");
}

function stackedBars(
  series: SeriesData[],
  domain: [number, number],
  colors: readonly string[],
): string {
  const sy = yScale(domain);
  const slots = Math.max(...series.map((s) => s.y.length));
  const parts: string[] = [];
  for (let i = 0; i < slots; i++) {
    const [x0, width] = slotX(i, slots);
    let running = 0;
    series.forEach((s, k) => {
      const v = s.y[i] ?? 0;
      const y0 = sy(running + v);
      const h = sy(running) - y0;
      parts.push(
        `<rect class="bar" x="${fmt(x0 + width * 0.14)}" y="${fmt(y0)}" width="${fmt(width * 0.72)}" height="${fmt(h)}" fill="${colors[k % colors.length]}"><title>${esc(s.name)}: ${fmt(v)}</title></rect>`,
      );
      running += v;
    });
  }
  return parts.join("");
}

function pie(series: SeriesData, colors: readonly string[]): string {
  const cx = 250;
  const cy = 170;
  const r = 130;
  const total = series.y.reduce((a, b) => a + b, 0);
  if (total <= 0) return "";
  const parts: string[] = [];
  let angle = -Math.PI / 2;
  series.y.forEach((v, i) => {
    const frac = v / total;
    const next = angle + frac * 2 * Math.PI;
    const x1 = cx + r * Math.cos(angle);
    const y1 = cy + r * Math.sin(angle);
    const x2 = cx + r * Math.cos(next - 1e-6);
    const y2 = cy + r * Math.sin(next - 1e-6);
    const large = frac > 0.5 ? 1 : 0;
    const label = String(series.x[i] ?? `slice ${i + 1}`);
    const d =
      frac >= 1 - 1e-9
        ? `M ${cx - r} ${cy} A ${r} ${r} 0 1 1 ${cx + r} ${cy} A ${r} ${r} 0 1 1 ${cx - r} ${cy}`
        : `M ${cx} ${cy} L ${fmt(x1)} ${fmt(y1)} A ${r} ${r} 0 ${large} 1 ${fmt(x2)} ${fmt(y2)} Z`;
    parts.push(
      `<path class="slice" d="${d}" fill="${colors[i % colors.length]}"><title>${esc(label)}: ${fmt(frac * 100)}%</title></path>`,
    );
    angle = next;
  });
  // slice labels double as the pie's legend
  series.x.forEach((label, i) => {
    const y = 80 + i * 22;
    parts.push(
      `<rect class="legend-swatch" x="420" y="${y - 11}" width="12" height="12" fill="${colors[i % colors.length]}"/>`,
      `<text class="legend-label" x="438" y="${y}">${esc(String(label))} (${fmt((series.y[i] / total) * 100)}%)</text>`,
    );
  });
  return parts.join("");
}

export function renderChartSvg(spec: ChartSpecData, altText: string, theme: Theme): string {
  const colors = paletteFor(theme);
  let body: string;
  if (!hasData(spec)) {
    body = `<text class="empty-note" x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle">No activity recorded</text>`;
  } else {
    const domain = yDomain(spec);
    switch (spec.chart_type) {
      case "bar":
        body = axes(spec, domain) + bars(spec.series, domain, colors, spec.series.length > 1);
        break;
      case "grouped_bar_superposed":
        body = axes(spec, domain) + bars(spec.series, domain, colors, true);
        break;
      case "bar_with_line":
        body =
          axes(spec, domain) +
          bars([spec.series[0]], domain, colors, false) +
          (spec.series.length > 1
            ? lines(spec.series.slice(1), domain, colors.slice(1))
            : polyline(spec.series[0], domain, colors[1]));
        break;
      case "line":
        body = axes(spec, domain) + lines(spec.series, domain, colors);
        break;
      case "line_sd": {
        const sd = spec.series.find((s) => s.name.toLowerCase().endsWith("sd"));
        const means = spec.series.filter((s) => s !== sd);
        body =
          axes(spec, domain) +
          (sd && means.length ? sdBand(means[0], sd, domain, colors[0]) : "") +
          lines(means, domain, colors);
        break;
      }
      case "stacked_area":
        body = axes(spec, domain) + stackedArea(spec.series, domain, colors);
        break;
      case "stacked_bar":
        body = axes(spec, domain) + stackedBars(spec.series, domain, colors);
        break;
      case "pie":
        body = pie(spec.series[0], colors);
        break;
    }
    body += legend(spec, colors);
  }
  return (
    `<svg class="chart chart-${spec.chart_type}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
    `role="img" aria-label="${esc(altText)}" preserveAspectRatio="xMidYMid meet">${body}</svg>`
  );
}

export function renderChart(item: ChartItemData, theme: Theme): string {
  return (
    `<figure class="chart-figure">` +
    renderChartSvg(item.spec, item.alt_text, theme) +
    `<figcaption>${esc(item.caption)}</figcaption>` +
    `</figure>`
  );
}
