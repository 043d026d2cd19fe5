/** Minimal deterministic SVG scene builder: fixed canvas, fixed precision,
 * no timestamps or generated ids, so identical inputs give identical bytes.
 */

export interface Scale {
  toPx(v: number): number;
}

export function linearScale(lo: number, hi: number, pxLo: number, pxHi: number): Scale {
  const span = hi - lo || 1;
  return { toPx: (v) => pxLo + ((v - lo) / span) * (pxHi - pxLo) };
}

export function logScale(lo: number, hi: number, pxLo: number, pxHi: number): Scale {
  const llo = Math.log10(lo);
  const span = Math.log10(hi) - llo || 1;
  return { toPx: (v) => pxLo + ((Math.log10(v) - llo) / span) * (pxHi - pxLo) };
}

const fmt = (v: number): string => {
  const r = Number(v.toFixed(2));
  return Object.is(r, -0) ? "0" : String(r);
};

export class Svg {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  polyline(xs: number[], ys: number[], opts: { stroke: string; width?: number; dash?: string }): void {
    const pts = xs.map((x, i) => `${fmt(x)},${fmt(ys[i])}`).join(" ");
    const dash = opts.dash ? ` stroke-dasharray="${opts.dash}"` : "";
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${opts.stroke}" ` +
        `stroke-width="${opts.width ?? 1.5}"${dash}/>`,
    );
  }

  filledBand(xs: number[], upper: number[], lower: number[], fill: string, opacity: number): void {
    const fwd = xs.map((x, i) => `${fmt(x)},${fmt(upper[i])}`);
    const back = [...xs].reverse().map((x, i) => `${fmt(x)},${fmt(lower[lower.length - 1 - i])}`);
    this.parts.push(
      `<polygon points="${fwd.join(" ")} ${back.join(" ")}" fill="${fill}" ` +
        `fill-opacity="${opacity}" stroke="none"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number,
       opts: { stroke: string; width?: number; dash?: string }): void {
    const dash = opts.dash ? ` stroke-dasharray="${opts.dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${opts.stroke}" stroke-width="${opts.width ?? 1}"${dash}/>`,
    );
  }

  text(x: number, y: number, s: string, opts: { size?: number; anchor?: string } = {}): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${opts.size ?? 11}" ` +
        `text-anchor="${opts.anchor ?? "start"}" fill="black">${s}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}
