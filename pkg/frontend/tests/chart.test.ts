import { describe, expect, it } from "vitest";

import { appendRecord, chartGeometry, startChart } from "../src/chart";

const COLUMNS = [
  { component_id: "wolf", display_name: "Wolf" },
  { component_id: "sheep", display_name: "Sheep" },
  { component_id: "grass", display_name: "Grass" },
];

describe("chart state", () => {
  it("starts with one series per component and no points", () => {
    const chart = startChart(COLUMNS);
    expect(chart.series).toHaveLength(3);
    expect(chart.series.map((s) => s.name)).toEqual(["Wolf", "Sheep", "Grass"]);
    expect(chart.series.every((s) => s.points.length === 0)).toBe(true);
  });

  it("appends exactly one point per component per record", () => {
    let chart = startChart(COLUMNS);
    chart = appendRecord(chart, { tick: 0, counts: { wolf: 200, sheep: 1200, grass: 1000 } });
    chart = appendRecord(chart, { tick: 1, counts: { wolf: 199, sheep: 1180, grass: 400 } });
    expect(chart.ticks).toEqual([0, 1]);
    for (const series of chart.series) {
      expect(series.points).toHaveLength(2);
    }
    expect(chart.series[1].points).toEqual([1200, 1180]);
  });

  it("missing counts chart as zero", () => {
    let chart = startChart(COLUMNS);
    chart = appendRecord(chart, { tick: 0, counts: { wolf: 5 } });
    expect(chart.series.map((s) => s.points[0])).toEqual([5, 0, 0]);
  });

  it("geometry maps the data envelope onto the plot area", () => {
    let chart = startChart(COLUMNS.slice(0, 1));
    chart = appendRecord(chart, { tick: 0, counts: { wolf: 0 } });
    chart = appendRecord(chart, { tick: 10, counts: { wolf: 500 } });
    const geometry = chartGeometry(chart);
    expect(geometry.maxTick).toBe(10);
    expect(geometry.maxValue).toBe(500);
    const width = 760;
    const height = 300;
    expect(geometry.toX(0, width)).toBeLessThan(geometry.toX(10, width));
    expect(geometry.toY(500, height)).toBeLessThan(geometry.toY(0, height));
  });
});
