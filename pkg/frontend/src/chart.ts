// Live population chart. The series state is pure and renders only from
// streamed records (the engine owns the semantics; nothing is recomputed
// client-side). One series per component, one point per component per
// streamed record.

import type { StreamColumn, StreamRecord } from "./types.js";

export const SERIES_COLORS = [
  "#2e7d32", "#1565c0", "#ef6c00", "#6a1b9a", "#c62828", "#00838f",
  "#9e9d24", "#4527a0",
];

export interface ChartSeries {
  componentId: string;
  name: string;
  color: string;
  points: number[]; // index = record order; x is the tick in ticks[]
}

export interface ChartState {
  ticks: number[];
  series: ChartSeries[];
}

export function startChart(columns: StreamColumn[]): ChartState {
  return {
    ticks: [],
    series: columns.map((column, i) => ({
      componentId: column.component_id,
      name: column.display_name,
      color: SERIES_COLORS[i % SERIES_COLORS.length],
      points: [],
    })),
  };
}

/** Append one record: exactly one new point on every series. */
export function appendRecord(state: ChartState, record: StreamRecord): ChartState {
  return {
    ticks: [...state.ticks, record.tick],
    series: state.series.map((s) => ({
      ...s,
      points: [...s.points, record.counts[s.componentId] ?? 0],
    })),
  };
}

export interface ChartGeometry {
  maxTick: number;
  maxValue: number;
  toX(tick: number, width: number): number;
  toY(value: number, height: number): number;
}

export const CHART_PADDING = { left: 48, right: 12, top: 10, bottom: 26 };

export function chartGeometry(state: ChartState): ChartGeometry {
  const maxTick = Math.max(1, ...state.ticks);
  const maxValue = Math.max(1, ...state.series.flatMap((s) => s.points));
  return {
    maxTick,
    maxValue,
    toX: (tick, width) =>
      CHART_PADDING.left +
      ((width - CHART_PADDING.left - CHART_PADDING.right) * tick) / maxTick,
    toY: (value, height) =>
      CHART_PADDING.top +
      (height - CHART_PADDING.top - CHART_PADDING.bottom) * (1 - value / maxValue),
  };
}

/** Render into a 2d canvas context (browser only). */
export function drawChart(
  ctx: CanvasRenderingContext2D,
  state: ChartState,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, width, height);
  const geometry = chartGeometry(state);
  const { left, right, top, bottom } = CHART_PADDING;

  ctx.strokeStyle = "#666";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(left, top);
  ctx.lineTo(left, height - bottom);
  ctx.lineTo(width - right, height - bottom);
  ctx.stroke();

  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "center";
  ctx.fillText("months", left + (width - left - right) / 2, height - 8);
  ctx.textAlign = "right";
  ctx.fillText(String(Math.round(geometry.maxValue)), left - 4, top + 10);
  ctx.fillText("0", left - 4, height - bottom);
  ctx.fillText(String(geometry.maxTick), width - right, height - bottom + 14);

  for (const series of state.series) {
    if (series.points.length === 0) continue;
    ctx.strokeStyle = series.color;
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    series.points.forEach((value, i) => {
      const x = geometry.toX(state.ticks[i], width);
      const y = geometry.toY(value, height);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  }

  // legend
  let legendY = top + 6;
  ctx.textAlign = "left";
  for (const series of state.series) {
    ctx.fillStyle = series.color;
    ctx.fillRect(width - right - 130, legendY - 8, 10, 10);
    ctx.fillStyle = "#222";
    ctx.fillText(series.name, width - right - 116, legendY);
    legendY += 15;
  }
}
