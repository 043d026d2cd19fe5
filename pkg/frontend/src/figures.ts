/** The three figure renderings.
 *
 * fig1/fig3: logarithmic negativity against the dimensionless acceleration
 * aL/c^2, one curve per (squeezing, detector model); line styles follow the
 * source convention (largest squeezing solid, then dashed, then dotted).
 * fig2: mode-shape panels overlaying the optimal detector mode (red,
 * dashed) on the state mode (blue, solid) in position coordinates, with
 * shaded absolute-value envelopes, the real part drawn inside and a black
 * vertical line marking the horizon at x = 0.
 */

import { ModeSample, SchemaError, SweepRow } from "./csv.js";
import { linearScale, logScale, Svg } from "./svg.js";

const DASHES: Record<string, string | undefined> = {
  solid: undefined,
  dashed: "7 4",
  dotted: "2 3",
  dashdot: "7 3 2 3",
};

const STYLE_ORDER = ["solid", "dashed", "dotted", "dashdot"];

export function lineStyleForSqueezing(sValues: number[]): Map<number, string> {
  const sorted = [...new Set(sValues)].sort((a, b) => b - a);
  const map = new Map<number, string>();
  sorted.forEach((s, i) => map.set(s, STYLE_ORDER[i % STYLE_ORDER.length]));
  return map;
}

function negativityAxes(svg: Svg, xLo: number, xHi: number, yHi: number,
                        box: { left: number; right: number; top: number; bottom: number }) {
  svg.line(box.left, box.bottom, box.right, box.bottom, { stroke: "black" });
  svg.line(box.left, box.bottom, box.left, box.top, { stroke: "black" });
  const xs = logScale(xLo, xHi, box.left, box.right);
  for (let d = Math.ceil(Math.log10(xLo)); d <= Math.floor(Math.log10(xHi)); d++) {
    const v = 10 ** d;
    const px = xs.toPx(v);
    svg.line(px, box.bottom, px, box.bottom + 4, { stroke: "black" });
    svg.text(px, box.bottom + 16, d === 0 ? "1" : `1e${d}`, { anchor: "middle" });
  }
  const ys = linearScale(0, yHi, box.bottom, box.top);
  const step = yHi > 4 ? 2 : yHi > 1.5 ? 1 : 0.5;
  for (let v = 0; v <= yHi + 1e-9; v += step) {
    const py = ys.toPx(v);
    svg.line(box.left - 4, py, box.left, py, { stroke: "black" });
    svg.text(box.left - 7, py + 4, String(Number(v.toFixed(1))), { anchor: "end" });
  }
  svg.text((box.left + box.right) / 2, box.bottom + 32, "aL/c^2", { anchor: "middle" });
  svg.text(box.left - 34, box.top - 8, "E_N");
  return { xs, ys };
}

function sweepCurves(svg: Svg, rows: SweepRow[],
                     box: { left: number; right: number; top: number; bottom: number },
                     colorFor: (model: string) => string,
                     widthFor: (model: string) => number): void {
  const sValues = rows.map((r) => r.s);
  const styles = lineStyleForSqueezing(sValues);
  const xLo = Math.min(...rows.map((r) => r.aL_over_c2));
  const xHi = Math.max(...rows.map((r) => r.aL_over_c2));
  const yHi = Math.max(...rows.map((r) => r.e_n)) * 1.05;
  const { xs, ys } = negativityAxes(svg, xLo, xHi, yHi, box);

  const groups = new Map<string, SweepRow[]>();
  for (const r of rows) {
    const key = `${r.detector_model}|${r.s}`;
    (groups.get(key) ?? groups.set(key, []).get(key)!).push(r);
  }
  const keys = [...groups.keys()].sort();
  for (const key of keys) {
    const grp = groups.get(key)!.slice().sort((a, b) => a.aL_over_c2 - b.aL_over_c2);
    const model = grp[0].detector_model;
    svg.polyline(
      grp.map((r) => xs.toPx(r.aL_over_c2)),
      grp.map((r) => ys.toPx(r.e_n)),
      {
        stroke: colorFor(model),
        width: widthFor(model),
        dash: DASHES[styles.get(grp[0].s) ?? "solid"],
      },
    );
  }
}

export function renderFig1(rows: SweepRow[]): string {
  const models = new Set(rows.map((r) => r.detector_model));
  if (models.size !== 1) {
    throw new SchemaError("fig1 expects a single detector model in the CSV");
  }
  const svg = new Svg(640, 420);
  sweepCurves(svg, rows, { left: 60, right: 610, top: 25, bottom: 370 },
    () => "#1f4e9c", () => 1.6);
  svg.text(320, 16, "negativity vs acceleration, conformal Gaussian detector", { anchor: "middle" });
  return svg.render();
}

export function renderFig3(rows: SweepRow[]): string {
  const models = new Set(rows.map((r) => r.detector_model));
  if (!models.has("optimized") || !models.has("gaussian")) {
    throw new SchemaError("fig3 expects both detector models in the CSV");
  }
  const svg = new Svg(640, 420);
  sweepCurves(svg, rows, { left: 60, right: 610, top: 25, bottom: 370 },
    (m) => (m === "optimized" ? "#1f4e9c" : "#888888"),
    (m) => (m === "optimized" ? 2.2 : 1.0));
  svg.text(320, 16, "best accessible negativity (thick) vs Gaussian detector (thin)", { anchor: "middle" });
  return svg.render();
}

export interface Fig2Panel {
  label: string;
  state: ModeSample[];
  optimal: ModeSample[];
}

export function renderFig2(panels: Fig2Panel[]): string {
  if (panels.length === 0) {
    throw new SchemaError("fig2 needs at least one panel");
  }
  const panelW = 320;
  const svg = new Svg(panelW * panels.length, 300);
  panels.forEach((panel, idx) => {
    const left = idx * panelW + 40;
    const right = idx * panelW + panelW - 15;
    const top = 35;
    const bottom = 265;
    const all = [...panel.state, ...panel.optimal];
    const xLo = Math.min(...all.map((p) => p.coord));
    const xHi = Math.max(...all.map((p) => p.coord));
    const amp = Math.max(...all.map((p) => Math.hypot(p.re, p.im))) * 1.08;
    const xs = linearScale(xLo, xHi, left, right);
    const ys = linearScale(-amp, amp, bottom, top);

    svg.line(left, ys.toPx(0), right, ys.toPx(0), { stroke: "#cccccc" });
    for (const [samples, color, dash] of [
      [panel.state, "#1f4e9c", undefined],
      [panel.optimal, "#c0392b", "6 4"],
    ] as const) {
      const px = samples.map((p) => xs.toPx(p.coord));
      const env = samples.map((p) => Math.hypot(p.re, p.im));
      // shaded interior of the +- absolute-value envelopes
      svg.filledBand(px, samples.map((p, i) => ys.toPx(env[i])),
        samples.map((p, i) => ys.toPx(-env[i])), color, 0.15);
      svg.polyline(px, env.map((e) => ys.toPx(e)), { stroke: color, width: 1.4, dash });
      svg.polyline(px, env.map((e) => ys.toPx(-e)), { stroke: color, width: 1.4, dash });
      // oscillation of the wave drawn inside the envelope
      svg.polyline(px, samples.map((p) => ys.toPx(p.re)), { stroke: color, width: 0.6, dash });
    }
    // the horizon: boundary of the accessible wedge at x = 0
    if (xLo < 0 && xHi > 0) {
      svg.line(xs.toPx(0), top, xs.toPx(0), bottom, { stroke: "black", width: 2 });
    }
    svg.line(left, bottom, right, bottom, { stroke: "black" });
    svg.text((left + right) / 2, bottom + 20, "x/L", { anchor: "middle" });
    svg.text((left + right) / 2, 20, panel.label, { anchor: "middle" });
  });
  return svg.render();
}
