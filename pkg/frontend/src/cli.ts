/** Figure renderer CLI: reads the primary component's flat files only.
 *
 *   render --figure fig1 --in fig1.csv --out fig1.svg
 *   render --figure fig3 --in fig3.csv --out fig3.svg
 *   render --figure fig2 --in s1.txt,o1.txt[,s2.txt,o2.txt...] --out fig2.svg
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";
import { parseArgs } from "node:util";

import { parseModeTable, parseSweepCsv, SchemaError } from "./csv.js";
import { Fig2Panel, renderFig1, renderFig2, renderFig3 } from "./figures.js";

export function renderToString(figure: string, inputPaths: string[]): string {
  switch (figure) {
    case "fig1":
      return renderFig1(parseSweepCsv(readFileSync(inputPaths[0], "utf8")));
    case "fig3":
      return renderFig3(parseSweepCsv(readFileSync(inputPaths[0], "utf8")));
    case "fig2": {
      if (inputPaths.length < 2 || inputPaths.length % 2 !== 0) {
        throw new SchemaError("fig2 needs state/optimal mode-table pairs");
      }
      const panels: Fig2Panel[] = [];
      for (let i = 0; i < inputPaths.length; i += 2) {
        panels.push({
          label: basename(inputPaths[i]).replace(/\.state\.txt$/, ""),
          state: parseModeTable(readFileSync(inputPaths[i], "utf8")),
          optimal: parseModeTable(readFileSync(inputPaths[i + 1], "utf8")),
        });
      }
      return renderFig2(panels);
    }
    default:
      throw new SchemaError(`unknown figure id: ${figure}`);
  }
}

export function main(argv: string[]): number {
  const { positionals, values } = parseArgs({
    args: argv,
    allowPositionals: true,
    options: {
      figure: { type: "string" },
      in: { type: "string" },
      out: { type: "string" },
    },
  });
  if (positionals[0] !== "render" || !values.figure || !values.in || !values.out) {
    process.stderr.write(
      "usage: render --figure fig1|fig2|fig3 --in <files,comma-separated> --out <svg>\n",
    );
    return 2;
  }
  try {
    const svg = renderToString(values.figure, values.in.split(","));
    writeFileSync(values.out, svg, "utf8");
    return 0;
  } catch (err) {
    process.stderr.write(`render failed: ${(err as Error).message}\n`);
    return 1;
  }
}

const isMain = process.argv[1] !== undefined &&
  import.meta.url.endsWith(basename(process.argv[1]));
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
