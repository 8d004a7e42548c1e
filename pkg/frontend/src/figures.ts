/** Figure renderers: one SVG per CSV kind (ber, rate, threshold). */

import { groupBy, parseCsv, Row } from "./csv.js";
import {
  color,
  DEFAULT_MARGIN,
  drawAxes,
  linearScale,
  logScale,
  Scale,
  SvgCanvas,
  ticks,
} from "./svg.js";

const WIDTH = 640;
const HEIGHT = 440;

export type FigureKind = "ber" | "rate" | "threshold";

export function renderFigure(kind: FigureKind, csvText: string): string {
  switch (kind) {
    case "ber":
      return renderBer(csvText);
    case "rate":
      return renderRate(csvText);
    case "threshold":
      return renderThreshold(csvText);
    default:
      throw new Error(`unknown figure kind '${kind as string}'`);
  }
}

function frame(): { canvas: SvgCanvas; x0: number; x1: number; y0: number; y1: number } {
  const canvas = new SvgCanvas(WIDTH, HEIGHT);
  return {
    canvas,
    x0: DEFAULT_MARGIN.left,
    x1: WIDTH - DEFAULT_MARGIN.right,
    y0: HEIGHT - DEFAULT_MARGIN.bottom,
    y1: DEFAULT_MARGIN.top,
  };
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === hi) {
    // widen degenerate (single-value) extents so scales stay invertible
    lo = lo > 0 ? lo / 2 : lo - 1;
    hi = hi > 0 ? hi * 2 : hi + 1;
  }
  return [lo, hi];
}

function legend(canvas: SvgCanvas, entries: [string, string, boolean][]): void {
  let y = DEFAULT_MARGIN.top + 8;
  const x = WIDTH - DEFAULT_MARGIN.right - 130;
  for (const [label, stroke, dashed] of entries) {
    canvas.polyline(
      [
        [x, y],
        [x + 26, y],
      ],
      stroke,
      dashed,
    );
    canvas.text(x + 32, y + 3.5, label, "start", 10);
    y += 15;
  }
}

/** BER vs antenna count, log-y, one curve per bandwidth exponent. */
export function renderBer(csvText: string): string {
  const rows = parseCsv(csvText, ["N", "epsilon", "ber", "n_bits"]);
  // zero-error points are clamped to the resolution floor of the run
  const floored: Row[] = rows.map((r) => ({ ...r, ber: Math.max(r.ber, 0.5 / r.n_bits) }));
  const { canvas, x0, x1, y0, y1 } = frame();
  const [nLo, nHi] = extent(floored.map((r) => r.N));
  const [bLo, bHi] = extent(floored.map((r) => r.ber));
  const xs = logScale(nLo, nHi, x0, x1);
  const ys = logScale(Math.min(bLo, bHi / 10), Math.min(1, bHi * 1.5), y0, y1);
  drawAxes(
    canvas,
    DEFAULT_MARGIN,
    xs,
    ys,
    ticks(nLo, nHi, true),
    ticks(Math.min(bLo, bHi / 10), 1, true),
    "receive antennas N",
    "BER",
  );
  const entries: [string, string, boolean][] = [];
  let i = 0;
  for (const [eps, pts] of groupBy(floored, "epsilon")) {
    pts.sort((a, b) => a.N - b.N);
    const c = color(i++);
    canvas.polyline(pts.map((p) => [xs(p.N), ys(p.ber)]), c);
    for (const p of pts) canvas.circle(xs(p.N), ys(p.ber), 3, c);
    entries.push([`eps = ${eps}`, c, false]);
  }
  legend(canvas, entries);
  return canvas.render();
}

/** Transmitted EM rate vs antenna count, log-log, one curve per exponent. */
export function renderRate(csvText: string): string {
  const rows = parseCsv(csvText, ["N", "epsilon", "rate_bits_per_block"]);
  const { canvas, x0, x1, y0, y1 } = frame();
  const [nLo, nHi] = extent(rows.map((r) => r.N));
  const [rLo, rHi] = extent(rows.map((r) => Math.max(r.rate_bits_per_block, 0.5)));
  const xs = logScale(nLo, nHi, x0, x1);
  const ys = logScale(rLo, rHi, y0, y1);
  drawAxes(
    canvas,
    DEFAULT_MARGIN,
    xs,
    ys,
    ticks(nLo, nHi, true),
    ticks(rLo, rHi, true),
    "receive antennas N",
    "rate (bits / block)",
  );
  const entries: [string, string, boolean][] = [];
  let i = 0;
  for (const [eps, pts] of groupBy(rows, "epsilon")) {
    pts.sort((a, b) => a.N - b.N);
    const c = color(i++);
    canvas.polyline(
      pts.map((p) => [xs(p.N), ys(Math.max(p.rate_bits_per_block, 0.5))]),
      c,
    );
    entries.push([`eps = ${eps}`, c, false]);
  }
  legend(canvas, entries);
  return canvas.render();
}

/**
 * Genie (dashed) and pilot (solid) rates vs bandwidth, per antenna count,
 * with a star on each row flagged as a threshold.
 */
export function renderThreshold(csvText: string): string {
  const rows = parseCsv(csvText, [
    "N",
    "bandwidth_hz",
    "genie_rate_bps",
    "pilot_rate_bps",
    "is_threshold",
  ]);
  const grid = rows.filter((r) => r.is_threshold === 0);
  const stars = rows.filter((r) => r.is_threshold !== 0);
  const base = grid.length > 0 ? grid : stars;
  const { canvas, x0, x1, y0, y1 } = frame();
  const [wLo, wHi] = extent(base.map((r) => r.bandwidth_hz / 1e6));
  const [, rHi] = extent(base.map((r) => r.genie_rate_bps / 1e6));
  const xs: Scale = linearScale(wLo, wHi, x0, x1);
  const ys: Scale = linearScale(0, rHi * 1.05, y0, y1);
  drawAxes(
    canvas,
    DEFAULT_MARGIN,
    xs,
    ys,
    ticks(wLo, wHi, false),
    ticks(0, rHi * 1.05, false),
    "bandwidth (MHz)",
    "rate (Mbit/s)",
  );
  const entries: [string, string, boolean][] = [];
  let i = 0;
  for (const [n, pts] of groupBy(grid, "N")) {
    pts.sort((a, b) => a.bandwidth_hz - b.bandwidth_hz);
    const c = color(i++);
    canvas.polyline(pts.map((p) => [xs(p.bandwidth_hz / 1e6), ys(p.genie_rate_bps / 1e6)]), c, true);
    canvas.polyline(pts.map((p) => [xs(p.bandwidth_hz / 1e6), ys(p.pilot_rate_bps / 1e6)]), c);
    entries.push([`N = ${n} genie`, c, true], [`N = ${n} pilot`, c, false]);
  }
  for (const s of stars) {
    canvas.star(xs(s.bandwidth_hz / 1e6), ys(s.pilot_rate_bps / 1e6), 8, "#2ca02c");
  }
  legend(canvas, entries);
  return canvas.render();
}
