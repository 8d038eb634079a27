/**
 * Four-panel figure: a pure plot specification built from the loaded
 * panels, then a deterministic SVG rendering of that specification.
 *
 * Layout is a 2x2 grid: unscaled panels A and B on top, their scaled
 * counterparts C and D below. One line series per fixed value, with a
 * legend entry each; axes carry the variable name and range.
 */

import { writeFile } from "node:fs/promises";

import type { PanelData, PanelId, SeriesPoint } from "./sweepCsv.js";

export interface SeriesSpec {
  label: string;
  color: string;
  data: SeriesPoint[];
  /** Pixel coordinates inside the figure, one per data point. */
  points: Array<{ px: number; py: number }>;
}

export interface AxisSpec {
  label: string;
  min: number;
  max: number;
  ticks: number[];
}

export interface PanelSpec {
  panel: PanelId;
  title: string;
  /** Plot area in figure pixels. */
  left: number;
  top: number;
  width: number;
  height: number;
  xAxis: AxisSpec;
  yAxis: AxisSpec;
  series: SeriesSpec[];
}

export interface FigureSpec {
  width: number;
  height: number;
  panels: PanelSpec[];
}

const PANEL_ORDER: PanelId[] = ["A", "B", "C", "D"];

const PALETTE = [
  "#4269d0",
  "#efb118",
  "#ff725c",
  "#6cc5b0",
  "#3ca951",
  "#ff8ab7",
  "#a463f2",
  "#97bbf5",
];

const FIGURE_WIDTH = 1240;
const FIGURE_HEIGHT = 900;
const CELL_WIDTH = FIGURE_WIDTH / 2;
const CELL_HEIGHT = FIGURE_HEIGHT / 2;
const MARGIN = { top: 56, right: 150, bottom: 62, left: 72 };

const TITLES: Record<PanelId, string> = {
  A: "A: score vs rating (unscaled)",
  B: "B: score vs consensus (unscaled)",
  C: "C: score vs rating (scaled)",
  D: "D: score vs consensus (scaled)",
};

function ticksOver(min: number, max: number, count = 5): number[] {
  const step = (max - min) / (count - 1);
  return Array.from({ length: count }, (_, i) => round3(min + step * i));
}

function round3(value: number): number {
  return Math.round(value * 1000) / 1000;
}

function byPanel(panels: PanelData[]): Map<PanelId, PanelData> {
  const found = new Map<PanelId, PanelData>();
  for (const panel of panels) {
    if (found.has(panel.panel)) {
      throw new Error(`duplicate panel ${panel.panel}`);
    }
    found.set(panel.panel, panel);
  }
  for (const id of PANEL_ORDER) {
    if (!found.has(id)) {
      throw new Error(`missing panel ${id}`);
    }
  }
  return found;
}

export function buildFigureSpec(panels: PanelData[]): FigureSpec {
  const indexed = byPanel(panels);
  const specs = PANEL_ORDER.map((id, position) => {
    const data = indexed.get(id)!;
    const column = position % 2;
    const row = Math.floor(position / 2);
    return buildPanelSpec(data, column * CELL_WIDTH, row * CELL_HEIGHT);
  });
  return { width: FIGURE_WIDTH, height: FIGURE_HEIGHT, panels: specs };
}

function buildPanelSpec(data: PanelData, cellLeft: number, cellTop: number): PanelSpec {
  const allPoints = [...data.series.values()].flat();
  const axisValues = allPoints.map((p) => p.axis);
  const scores = allPoints.map((p) => p.score);
  const xMin = Math.min(...axisValues);
  const xMax = Math.max(...axisValues);
  // floor to one decimal so the axis starts at or below the data
  const yMin = Math.floor(Math.min(...scores) * 10) / 10;
  const yMax = 5;

  const left = cellLeft + MARGIN.left;
  const top = cellTop + MARGIN.top;
  const width = CELL_WIDTH - MARGIN.left - MARGIN.right;
  const height = CELL_HEIGHT - MARGIN.top - MARGIN.bottom;

  const toPx = (axis: number) => left + ((axis - xMin) / (xMax - xMin)) * width;
  const toPy = (score: number) => top + height - ((score - yMin) / (yMax - yMin)) * height;

  const series: SeriesSpec[] = [...data.series.entries()].map(([fixedValue, points], i) => ({
    label: `${data.fixedAxis} ${fixedValue}`,
    color: PALETTE[i % PALETTE.length],
    data: points,
    points: points.map((p) => ({ px: round3(toPx(p.axis)), py: round3(toPy(p.score)) })),
  }));

  return {
    panel: data.panel,
    title: TITLES[data.panel],
    left,
    top,
    width,
    height,
    xAxis: { label: data.varied, min: xMin, max: xMax, ticks: ticksOver(xMin, xMax) },
    yAxis: {
      label: data.panel === "C" || data.panel === "D" ? "scaled score" : "score",
      min: yMin,
      max: yMax,
      ticks: ticksOver(yMin, yMax),
    },
    series,
  };
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderSvg(spec: FigureSpec): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${spec.width}" height="${spec.height}" ` +
      `viewBox="0 0 ${spec.width} ${spec.height}" font-family="sans-serif">`,
  );
  parts.push(`<rect width="${spec.width}" height="${spec.height}" fill="white"/>`);
  for (const panel of spec.panels) {
    parts.push(renderPanel(panel));
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function renderPanel(panel: PanelSpec): string {
  const { left, top, width, height } = panel;
  const bottom = top + height;
  const right = left + width;
  const parts: string[] = [];
  parts.push(`<g data-panel="${panel.panel}">`);
  parts.push(
    `<text x="${left + width / 2}" y="${top - 28}" text-anchor="middle" font-size="16" ` +
      `font-weight="bold">${escapeXml(panel.title)}</text>`,
  );

  // axes
  parts.push(
    `<line x1="${left}" y1="${bottom}" x2="${right}" y2="${bottom}" stroke="black"/>`,
    `<line x1="${left}" y1="${top}" x2="${left}" y2="${bottom}" stroke="black"/>`,
  );
  const toPx = (v: number) => left + ((v - panel.xAxis.min) / (panel.xAxis.max - panel.xAxis.min)) * width;
  const toPy = (v: number) => bottom - ((v - panel.yAxis.min) / (panel.yAxis.max - panel.yAxis.min)) * height;
  for (const tick of panel.xAxis.ticks) {
    const x = toPx(tick);
    parts.push(
      `<line x1="${x}" y1="${bottom}" x2="${x}" y2="${bottom + 5}" stroke="black"/>`,
      `<text x="${x}" y="${bottom + 20}" text-anchor="middle" font-size="11">${tick}</text>`,
    );
  }
  for (const tick of panel.yAxis.ticks) {
    const y = toPy(tick);
    parts.push(
      `<line x1="${left - 5}" y1="${y}" x2="${left}" y2="${y}" stroke="black"/>`,
      `<text x="${left - 9}" y="${y + 4}" text-anchor="end" font-size="11">${tick}</text>`,
    );
  }
  parts.push(
    `<text x="${left + width / 2}" y="${bottom + 42}" text-anchor="middle" font-size="13">` +
      `${escapeXml(panel.xAxis.label)} [${panel.xAxis.min}, ${panel.xAxis.max}]</text>`,
    `<text x="${left - 52}" y="${top + height / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 ${left - 52} ${top + height / 2})">` +
      `${escapeXml(panel.yAxis.label)} [${panel.yAxis.min}, ${panel.yAxis.max}]</text>`,
  );

  // series lines and legend
  panel.series.forEach((series, i) => {
    const points = series.points.map((p) => `${p.px},${p.py}`).join(" ");
    parts.push(
      `<polyline data-series="${escapeXml(series.label)}" points="${points}" fill="none" ` +
        `stroke="${series.color}" stroke-width="1.5"/>`,
    );
    const legendY = top + 8 + i * 18;
    parts.push(
      `<line x1="${right + 12}" y1="${legendY}" x2="${right + 34}" y2="${legendY}" ` +
        `stroke="${series.color}" stroke-width="2"/>`,
      `<text x="${right + 40}" y="${legendY + 4}" font-size="12" data-legend="${panel.panel}">` +
        `${escapeXml(series.label)}</text>`,
    );
  });
  parts.push("</g>");
  return parts.join("\n");
}

export async function renderFigure(panels: PanelData[], outPath: string): Promise<string> {
  const svg = renderSvg(buildFigureSpec(panels));
  await writeFile(outPath, svg, "utf8");
  return svg;
}
