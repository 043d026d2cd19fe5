/** Parsers for the primary component's flat-file outputs. */

export const SWEEP_HEADER =
  "aL_over_c2,s,n_char,detector_model,abs_alpha,abs_beta,abs_beta_prime," +
  "n_unruh,beta_estimate,e_n,min_physicality_eig";

export interface SweepRow {
  aL_over_c2: number;
  s: number;
  n_char: number;
  detector_model: string;
  abs_alpha: number;
  abs_beta: number;
  abs_beta_prime: number;
  n_unruh: number;
  beta_estimate: number;
  e_n: number;
  min_physicality_eig: number;
}

export interface ModeSample {
  coord: number;
  re: number;
  im: number;
}

export class SchemaError extends Error {}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV input");
  }
  if (lines[0] !== SWEEP_HEADER) {
    throw new SchemaError(`unexpected CSV header: ${lines[0]}`);
  }
  if (lines.length === 1) {
    throw new SchemaError("CSV has a header but no rows");
  }
  const expected = SWEEP_HEADER.split(",").length;
  return lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== expected) {
      throw new SchemaError(`row ${i + 1}: expected ${expected} columns, got ${parts.length}`);
    }
    const num = (j: number): number => {
      const v = Number(parts[j]);
      if (!Number.isFinite(v)) {
        throw new SchemaError(`row ${i + 1}, column ${j + 1}: not a number: ${parts[j]}`);
      }
      return v;
    };
    return {
      aL_over_c2: num(0),
      s: num(1),
      n_char: num(2),
      detector_model: parts[3],
      abs_alpha: num(4),
      abs_beta: num(5),
      abs_beta_prime: num(6),
      n_unruh: num(7),
      beta_estimate: num(8),
      e_n: num(9),
      min_physicality_eig: num(10),
    };
  });
}

const MODE_HEADER = "coord re_value im_value re_dtime im_dtime";

export function parseModeTable(text: string): ModeSample[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty mode table");
  }
  const header = lines[0].replace(/^#\s*/, "").trim();
  if (header !== MODE_HEADER) {
    throw new SchemaError(`unexpected mode-table header: ${header}`);
  }
  if (lines.length === 1) {
    throw new SchemaError("mode table has a header but no rows");
  }
  return lines.slice(1).map((line, i) => {
    const parts = line.trim().split(/\s+/).map(Number);
    if (parts.length !== 5 || parts.some((v) => !Number.isFinite(v))) {
      throw new SchemaError(`mode table row ${i + 1} is malformed`);
    }
    return { coord: parts[0], re: parts[1], im: parts[2] };
  });
}
