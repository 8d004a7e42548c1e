/** Minimal deterministic SVG chart primitives (no DOM required). */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const DEFAULT_MARGIN: Margin = { top: 20, right: 20, bottom: 45, left: 65 };

export type Scale = (value: number) => number;

/** Affine map [d0, d1] -> [r0, r1]. */
export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** Log10 map [d0, d1] -> [r0, r1]; domain must be positive. */
export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d0 <= 0 || d1 <= 0) throw new Error("log scale domain must be positive");
  const inner = linearScale(Math.log10(d0), Math.log10(d1), r0, r1);
  return (v) => inner(Math.log10(v));
}

/** Round-ish tick positions: linear (about n evenly spaced) or decade ticks. */
export function ticks(d0: number, d1: number, log: boolean, n = 6): number[] {
  if (log) {
    const out: number[] = [];
    for (let e = Math.ceil(Math.log10(d0) - 1e-9); Math.pow(10, e) <= d1 * (1 + 1e-9); e++) {
      out.push(Math.pow(10, e));
    }
    return out.length >= 2 ? out : [d0, d1];
  }
  const step = (d1 - d0) / (n - 1) || 1;
  return Array.from({ length: n }, (_, i) => d0 + i * step);
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function color(index: number): string {
  return PALETTE[index % PALETTE.length];
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Accumulates SVG elements and serializes a standalone document. */
export class SvgCanvas {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {}

  polyline(points: [number, number][], stroke: string, dashed = false): void {
    const pts = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
    const dash = dashed ? ' stroke-dasharray="6 4"' : "";
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="1.5"${dash}/>`,
    );
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.parts.push(
      `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="${r}" fill="${fill}"/>`,
    );
  }

  /** Five-pointed star marker, used for threshold rows. */
  star(x: number, y: number, r: number, fill: string): void {
    const pts: string[] = [];
    for (let i = 0; i < 10; i++) {
      const rad = i % 2 === 0 ? r : r * 0.45;
      const ang = -Math.PI / 2 + (i * Math.PI) / 5;
      pts.push(`${(x + rad * Math.cos(ang)).toFixed(2)},${(y + rad * Math.sin(ang)).toFixed(2)}`);
    }
    this.parts.push(
      `<polygon class="threshold-star" points="${pts.join(" ")}" fill="${fill}"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string): void {
    this.parts.push(
      `<line x1="${x1.toFixed(2)}" y1="${y1.toFixed(2)}" x2="${x2.toFixed(2)}" y2="${y2.toFixed(2)}" stroke="${stroke}" stroke-width="1"/>`,
    );
  }

  text(x: number, y: number, content: string, anchor = "middle", size = 11): void {
    this.parts.push(
      `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" text-anchor="${anchor}" font-family="sans-serif" font-size="${size}">${esc(content)}</text>`,
    );
  }

  render(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
      `viewBox="0 0 ${this.width} ${this.height}">\n<rect width="100%" height="100%" fill="white"/>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

/** Draw x/y axes with tick marks and labels onto the canvas. */
export function drawAxes(
  canvas: SvgCanvas,
  margin: Margin,
  xScale: Scale,
  yScale: Scale,
  xTicks: number[],
  yTicks: number[],
  xLabel: string,
  yLabel: string,
  fmt: (v: number) => string = (v) => formatTick(v),
): void {
  const x0 = margin.left;
  const x1 = canvas.width - margin.right;
  const y0 = canvas.height - margin.bottom;
  const y1 = margin.top;
  canvas.line(x0, y0, x1, y0, "#000");
  canvas.line(x0, y0, x0, y1, "#000");
  for (const t of xTicks) {
    const x = xScale(t);
    canvas.line(x, y0, x, y0 + 4, "#000");
    canvas.text(x, y0 + 17, fmt(t));
  }
  for (const t of yTicks) {
    const y = yScale(t);
    canvas.line(x0 - 4, y, x0, y, "#000");
    canvas.text(x0 - 7, y + 3.5, fmt(t), "end");
  }
  canvas.text((x0 + x1) / 2, canvas.height - 8, xLabel);
  canvas.text(14, (y0 + y1) / 2, yLabel, "middle", 11);
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const mag = Math.abs(v);
  if (mag >= 1e5 || mag < 1e-3) return v.toExponential(0).replace("+", "");
  return Number(v.toPrecision(4)).toString();
}
