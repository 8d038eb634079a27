/**
 * CLI entry: four sweep CSV paths (any order; panels come from the file
 * contents) and one output image path, all positional.
 *
 *   node dist/main.js a.csv b.csv c.csv d.csv figure.svg
 */

import { renderFigure } from "./figure.js";
import { loadSweep } from "./sweepCsv.js";

export async function run(argv: string[]): Promise<number> {
  if (argv.length !== 5) {
    console.error("usage: render-figure <sweep.csv> <sweep.csv> <sweep.csv> <sweep.csv> <out.svg>");
    return 2;
  }
  const outPath = argv[4];
  const panels = await Promise.all(argv.slice(0, 4).map((path) => loadSweep(path)));
  await renderFigure(panels, outPath);
  console.log(`wrote ${outPath}`);
  return 0;
}

const invokedDirectly = process.argv[1] !== undefined && import.meta.url.endsWith("main.js");
if (invokedDirectly) {
  run(process.argv.slice(2)).then(
    (code) => {
      process.exitCode = code;
    },
    (error: unknown) => {
      console.error(error instanceof Error ? error.message : String(error));
      process.exitCode = 1;
    },
  );
}
