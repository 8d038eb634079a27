/**
 * Sweep CSV loading.
 *
 * A sweep file is `panel,x,y,term1,term2,term3,raw,scaled` with one row
 * per evaluated (rating, consensus) pair, rows ordered fixed axis outer
 * and varied axis inner. Panels A and C vary the rating (x) at fixed
 * consensus levels (y); B and D vary consensus at fixed ratings. A and B
 * carry raw scores (empty `scaled` column), C and D carry scaled ones.
 */

import { readFile } from "node:fs/promises";

export type PanelId = "A" | "B" | "C" | "D";

export interface SeriesPoint {
  /** Varied-axis value (rating for A/C, consensus for B/D). */
  axis: number;
  /** Score at that point: raw for A/B, scaled for C/D. */
  score: number;
}

export interface PanelData {
  panel: PanelId;
  varied: "rating" | "consensus";
  fixedAxis: "rating" | "consensus";
  /** Fixed value (as printed in the CSV) -> points in grid order. */
  series: Map<string, SeriesPoint[]>;
}

export const SWEEP_HEADER = "panel,x,y,term1,term2,term3,raw,scaled";

const VARIED_BY_PANEL: Record<PanelId, "rating" | "consensus"> = {
  A: "rating",
  B: "consensus",
  C: "rating",
  D: "consensus",
};

const SCALED_PANELS: ReadonlySet<PanelId> = new Set(["C", "D"]);

function isPanelId(value: string): value is PanelId {
  return value === "A" || value === "B" || value === "C" || value === "D";
}

function parseCell(cell: string, column: string, line: number, source: string): number {
  const value = Number(cell);
  if (cell.trim() === "" || !Number.isFinite(value)) {
    throw new Error(`${source}:${line}: ${column} is not a number: ${JSON.stringify(cell)}`);
  }
  return value;
}

export function parseSweepCsv(text: string, source = "<input>"): PanelData {
  const lines = text.split(/\r?\n/);
  while (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0 || lines[0] !== SWEEP_HEADER) {
    throw new Error(`${source}:1: bad header; expected ${JSON.stringify(SWEEP_HEADER)}`);
  }
  if (lines.length === 1) {
    throw new Error(`${source}: no data rows`);
  }

  let panel: PanelId | undefined;
  const series = new Map<string, SeriesPoint[]>();

  for (let i = 1; i < lines.length; i++) {
    const line = i + 1;
    const cells = lines[i].split(",");
    if (cells.length !== 8) {
      throw new Error(`${source}:${line}: expected 8 fields, got ${cells.length}`);
    }
    const [panelCell, xCell, yCell, , , , rawCell, scaledCell] = cells;
    if (!isPanelId(panelCell)) {
      throw new Error(`${source}:${line}: unknown panel ${JSON.stringify(panelCell)}`);
    }
    if (panel === undefined) {
      panel = panelCell;
    } else if (panel !== panelCell) {
      throw new Error(`${source}:${line}: mixed panels ${panel} and ${panelCell}`);
    }
    const x = parseCell(xCell, "x", line, source);
    const y = parseCell(yCell, "y", line, source);
    const raw = parseCell(rawCell, "raw", line, source);
    let score = raw;
    if (SCALED_PANELS.has(panelCell)) {
      score = parseCell(scaledCell, "scaled", line, source);
    }
    const varied = VARIED_BY_PANEL[panelCell];
    const axis = varied === "rating" ? x : y;
    const fixedKey = varied === "rating" ? yCell : xCell;
    let points = series.get(fixedKey);
    if (points === undefined) {
      points = [];
      series.set(fixedKey, points);
    }
    points.push({ axis, score });
  }

  const varied = VARIED_BY_PANEL[panel!];
  return {
    panel: panel!,
    varied,
    fixedAxis: varied === "rating" ? "consensus" : "rating",
    series,
  };
}

export async function loadSweep(path: string): Promise<PanelData> {
  const text = await readFile(path, "utf8");
  return parseSweepCsv(text, path);
}
