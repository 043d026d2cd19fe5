import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { parseModeTable, parseSweepCsv, SchemaError, SWEEP_HEADER } from "../src/csv.js";
import { lineStyleForSqueezing, renderFig1, renderFig2, renderFig3 } from "../src/figures.js";

const dataDir = join(__dirname, "..", "data");
const read = (name: string) => readFileSync(join(dataDir, name), "utf8");

const fig1Rows = () => parseSweepCsv(read("fig1.csv"));
const fig3Rows = () => parseSweepCsv(read("fig3.csv"));
const fig2Panels = () => [
  {
    label: "low acceleration",
    state: parseModeTable(read("fig2.aL0.5.state.txt")),
    optimal: parseModeTable(read("fig2.aL0.5.optimal.txt")),
  },
  {
    label: "high acceleration",
    state: parseModeTable(read("fig2.aL2.state.txt")),
    optimal: parseModeTable(read("fig2.aL2.optimal.txt")),
  },
];

describe("csv parsing", () => {
  it("parses the sweep schema exactly", () => {
    const rows = fig1Rows();
    expect(rows.length).toBe(45);
    expect(rows[0].detector_model).toBe("gaussian");
    expect(rows.every((r) => r.e_n >= 0)).toBe(true);
  });

  it("rejects unknown headers", () => {
    expect(() => parseSweepCsv("a,b,c\n1,2,3\n")).toThrow(SchemaError);
  });

  it("rejects empty input without writing anything", () => {
    expect(() => parseSweepCsv("")).toThrow(SchemaError);
    expect(() => parseSweepCsv(SWEEP_HEADER + "\n")).toThrow(SchemaError);
  });

  it("rejects malformed rows", () => {
    expect(() => parseSweepCsv(SWEEP_HEADER + "\n1,2,3\n")).toThrow(SchemaError);
  });
});

describe("fig1", () => {
  it("renders deterministically", () => {
    const a = renderFig1(fig1Rows());
    const b = renderFig1(fig1Rows());
    expect(a).toBe(b);
    expect(a.startsWith("<svg")).toBe(true);
  });

  it("draws one monotone decaying curve per squeezing with distinct styles", () => {
    const svg = renderFig1(fig1Rows());
    const curves = svg.match(/<polyline /g) ?? [];
    expect(curves.length).toBe(3);
    expect(svg).toContain('stroke-dasharray="7 4"'); // s = 0.5 dashed
    expect(svg).toContain('stroke-dasharray="2 3"'); // s = 0.25 dotted
  });

  it("assigns solid to the largest squeezing", () => {
    const styles = lineStyleForSqueezing([0.25, 0.5, 1.0]);
    expect(styles.get(1.0)).toBe("solid");
    expect(styles.get(0.5)).toBe("dashed");
    expect(styles.get(0.25)).toBe("dotted");
  });

  it("rejects a two-model CSV", () => {
    expect(() => renderFig1(fig3Rows())).toThrow(SchemaError);
  });
});

describe("fig3", () => {
  it("renders deterministically with both models", () => {
    const a = renderFig3(fig3Rows());
    expect(a).toBe(renderFig3(fig3Rows()));
    const curves = a.match(/<polyline /g) ?? [];
    expect(curves.length).toBe(8); // 4 squeezings x 2 models
    expect(a).toContain('stroke="#888888"'); // thin comparison curves
  });

  it("rejects a single-model CSV", () => {
    expect(() => renderFig3(fig1Rows())).toThrow(SchemaError);
  });
});

describe("fig2", () => {
  it("renders deterministically", () => {
    const a = renderFig2(fig2Panels());
    expect(a).toBe(renderFig2(fig2Panels()));
  });

  it("shows the horizon line and shaded envelopes", () => {
    const svg = renderFig2(fig2Panels());
    // black vertical horizon line at x = 0 (present in the high-a panel)
    expect(svg).toMatch(/<line [^>]*stroke="black" stroke-width="2"/);
    // shaded interior of the absolute-value envelopes
    expect(svg).toMatch(/<polygon [^>]*fill-opacity="0.15"/);
    // dashed overlay of the optimal mode on the solid state mode
    expect(svg).toContain('stroke="#c0392b"');
    expect(svg).toContain('stroke="#1f4e9c"');
  });

  it("rejects empty panel lists and malformed tables", () => {
    expect(() => renderFig2([])).toThrow(SchemaError);
    expect(() => parseModeTable("")).toThrow(SchemaError);
    expect(() => parseModeTable("# wrong header\n1 2 3 4 5\n")).toThrow(SchemaError);
  });
});
