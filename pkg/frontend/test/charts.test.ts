// Chart renderer coverage: every chart type, legend rules, empty data.

import { describe, expect, it } from "vitest";
import { renderChart, renderChartSvg } from "../src/charts.js";
import { LIGHT_PALETTE } from "../src/accessibility.js";
import type { ChartSpecData, ChartTypeName } from "../src/types.js";

function spec(overrides: Partial<ChartSpecData> = {}): ChartSpecData {
  return {
    chart_type: "bar",
    series: [{ name: "class average", x: [1, 2, 3], y: [2.5, 3.1, 1.2] }],
    value_mode: "absolute",
    legend: false,
    x_label: "week",
    y_label: "hours online",
    palette_id: "okabe-ito",
    ...overrides,
  };
}

function mount(html: string): HTMLElement {
  const host = document.createElement("div");
  host.innerHTML = html;
  return host;
}

const ALL_TYPES: ChartTypeName[] = [
  "bar",
  "bar_with_line",
  "line",
  "line_sd",
  "stacked_area",
  "pie",
  "stacked_bar",
  "grouped_bar_superposed",
];

describe("renderChartSvg", () => {
  it.each(ALL_TYPES)("renders a %s chart with the alt text attached", (chartType) => {
    const data =
      chartType === "pie"
        ? spec({
            chart_type: chartType,
            series: [{ name: "share", x: ["a", "b", "c"], y: [50, 30, 20] }],
          })
        : spec({ chart_type: chartType });
    const host = mount(renderChartSvg(data, "described for screen readers", "default"));
    const svg = host.querySelector("svg");
    expect(svg).not.toBeNull();
    expect(svg!.getAttribute("role")).toBe("img");
    expect(svg!.getAttribute("aria-label")).toBe("described for screen readers");
    expect(svg!.classList.contains(`chart-${chartType}`)).toBe(true);
  });

  it("draws one bar per point", () => {
    const host = mount(renderChartSvg(spec(), "alt", "default"));
    expect(host.querySelectorAll("rect.bar").length).toBe(3);
  });

  it("draws side-by-side bars for every series in a comparison", () => {
    const data = spec({
      chart_type: "grouped_bar_superposed",
      legend: true,
      series: [
        { name: "group 0", x: [1, 2], y: [1, 2] },
        { name: "group 1", x: [1, 2], y: [2, 1] },
      ],
    });
    const host = mount(renderChartSvg(data, "alt", "default"));
    expect(host.querySelectorAll("rect.bar").length).toBe(4);
  });

  it("shows a legend exactly when the spec asks for one", () => {
    const twoSeries = [
      { name: "group 0", x: [1], y: [1] },
      { name: "group 1", x: [1], y: [2] },
    ];
    const withLegend = mount(
      renderChartSvg(
        spec({ chart_type: "grouped_bar_superposed", legend: true, series: twoSeries }),
        "alt",
        "default",
      ),
    );
    expect(withLegend.querySelector(".legend")).not.toBeNull();
    expect(withLegend.textContent).toContain("group 1");

    const without = mount(renderChartSvg(spec({ legend: false }), "alt", "default"));
    expect(without.querySelector(".legend")).toBeNull();
  });

  it("uses the colorblind-safe palette", () => {
    const host = mount(renderChartSvg(spec(), "alt", "default"));
    const bar = host.querySelector("rect.bar")!;
    expect(bar.getAttribute("fill")).toBe(LIGHT_PALETTE[0]);
  });

  it("stacked bars reach the composition total", () => {
    const data = spec({
      chart_type: "stacked_bar",
      legend: true,
      value_mode: "percentage_with_total",
      series: [
        { name: "before", x: [1], y: [40] },
        { name: "after", x: [1], y: [35] },
        { name: "did not watch", x: [1], y: [25] },
      ],
    });
    const host = mount(renderChartSvg(data, "alt", "default"));
    expect(host.querySelectorAll("rect.bar").length).toBe(3);
  });

  it("pie slices carry their share in the label list", () => {
    const data = spec({
      chart_type: "pie",
      series: [{ name: "share", x: ["profile 0", "profile 1"], y: [75, 25] }],
    });
    const host = mount(renderChartSvg(data, "alt", "default"));
    expect(host.querySelectorAll("path.slice").length).toBe(2);
    expect(host.textContent).toContain("profile 0 (75%)");
  });

  it("notes missing data instead of drawing an empty plot", () => {
    const data = spec({ series: [{ name: "class average", x: [], y: [] }] });
    const host = mount(renderChartSvg(data, "alt", "default"));
    expect(host.textContent).toContain("No activity recorded");
  });
});

describe("renderChart", () => {
  it("wraps the svg in a figure with the caption below", () => {
    const host = mount(
      renderChart(
        { spec: spec(), caption: "Average time online, weeks 1-3.", alt_text: "alt" },
        "default",
      ),
    );
    const figure = host.querySelector("figure.chart-figure")!;
    const children = Array.from(figure.children).map((el) => el.tagName.toLowerCase());
    expect(children).toEqual(["svg", "figcaption"]);
    expect(figure.querySelector("figcaption")!.textContent).toContain("weeks 1-3");
  });

  it("escapes markup in captions and labels", () => {
    const host = mount(
      renderChart(
        {
          spec: spec({ y_label: 'hours <& "quoted"' }),
          caption: "<script>alert(1)</script>",
          alt_text: "a & b",
        },
        "default",
      ),
    );
    expect(host.querySelector("script")).toBeNull();
    expect(host.querySelector("figcaption")!.textContent).toContain("<script>");
  });
});
