/** Overview heatmap: every level as one row (coarsest on top), tile width
 * proportional to the level period, canvas-rendered from the JSON norms so
 * zooming re-rasterizes crisply. */

import { gradientCss, logMap, MISSING_COLOR, SELECTION_COLOR } from "./colormap.js";
import { periodToNs, slotTimeNs, DAY_NS, dateStartNs } from "./timemap.js";
import type { SpectrogramDoc, SpectrogramRow } from "./types.js";

export interface TimeWindow {
  t0: number;
  t1: number;
}

export interface TileHit {
  level: number;
  slot: number;
}

export function fullSpan(doc: SpectrogramDoc): TimeWindow {
  let t0 = Infinity;
  let t1 = -Infinity;
  for (const row of doc.levels) {
    const period = periodToNs(row.period_ns);
    t0 = Math.min(t0, row.origin_ns);
    t1 = Math.max(t1, row.origin_ns + (row.first_slot + row.norms.length) * period);
  }
  return { t0, t1 };
}

/** Log-value range across all non-missing cells (global normalization). */
export function valueRange(doc: SpectrogramDoc): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const row of doc.levels) {
    row.log.forEach((v, i) => {
      if (!row.missing[i]) {
        lo = Math.min(lo, v);
        hi = Math.max(hi, v);
      }
    });
  }
  if (lo === Infinity) return [0, 0];
  return [lo, hi];
}

export function rowOrder(doc: SpectrogramDoc): SpectrogramRow[] {
  return [...doc.levels].sort((a, b) => b.level - a.level);
}

export function timeToX(t: number, window: TimeWindow, width: number): number {
  return ((t - window.t0) / (window.t1 - window.t0)) * width;
}

export function xToTime(x: number, window: TimeWindow, width: number): number {
  return window.t0 + (x / width) * (window.t1 - window.t0);
}

/** Which tile sits under a canvas position, or null between tiles. */
export function tileAt(doc: SpectrogramDoc, window: TimeWindow, width: number,
                       height: number, x: number, y: number): TileHit | null {
  const rows = rowOrder(doc);
  if (!rows.length) return null;
  const rowH = height / rows.length;
  const row = rows[Math.min(Math.floor(y / rowH), rows.length - 1)];
  const t = xToTime(x, window, width);
  const period = periodToNs(row.period_ns);
  const slot = Math.floor((t - row.origin_ns) / period);
  if (slot < row.first_slot || slot >= row.first_slot + row.norms.length) return null;
  return { level: row.level, slot };
}

export interface DrawOptions {
  selectedLevel: number | null;
  selectedDate: string | null;
  window: TimeWindow;
}

export function drawOverview(ctx: CanvasRenderingContext2D, doc: SpectrogramDoc,
                             width: number, height: number, opts: DrawOptions): void {
  const rows = rowOrder(doc);
  if (!rows.length) return;
  const [lo, hi] = valueRange(doc);
  const rowH = height / rows.length;
  ctx.clearRect(0, 0, width, height);
  rows.forEach((row, r) => {
    const period = periodToNs(row.period_ns);
    const y = r * rowH;
    for (let i = 0; i < row.norms.length; i++) {
      const slot = row.first_slot + i;
      const ts = slotTimeNs(row.origin_ns, row.period_ns, slot);
      const te = ts + period;
      if (te <= opts.window.t0 || ts >= opts.window.t1) continue;
      const x0 = Math.floor(timeToX(Math.max(ts, opts.window.t0), opts.window, width));
      const x1 = Math.max(Math.ceil(timeToX(Math.min(te, opts.window.t1), opts.window, width)), x0 + 1);
      if (row.missing[i]) {
        ctx.fillStyle = MISSING_COLOR;
      } else {
        const pos = hi === lo ? 0.5 : (row.log[i] - lo) / (hi - lo);
        ctx.fillStyle = gradientCss(pos);
      }
      ctx.fillRect(x0, y, x1 - x0, rowH);
    }
  });

  // "You are here": outline the viewed level row and, when drilling into a
  // date, the day column.
  ctx.strokeStyle = SELECTION_COLOR;
  ctx.lineWidth = 2;
  if (opts.selectedLevel !== null) {
    const r = rows.findIndex((row) => row.level === opts.selectedLevel);
    if (r >= 0) {
      ctx.strokeRect(1, r * rowH + 1, width - 2, rowH - 2);
    }
  }
  if (opts.selectedDate !== null) {
    const ds = dateStartNs(opts.selectedDate);
    const x0 = timeToX(Math.max(ds, opts.window.t0), opts.window, width);
    const x1 = timeToX(Math.min(ds + DAY_NS, opts.window.t1), opts.window, width);
    if (x1 > x0) {
      ctx.strokeRect(x0, 0, x1 - x0, height);
    }
  }
}

/** Zoom the window about a focal time by a factor (wheel zoom). */
export function zoomWindow(window: TimeWindow, focus: number, factor: number,
                           limit: TimeWindow): TimeWindow {
  const span = (window.t1 - window.t0) * factor;
  const minSpan = 1;
  const clipped = Math.max(Math.min(span, limit.t1 - limit.t0), minSpan);
  const rel = (focus - window.t0) / (window.t1 - window.t0);
  let t0 = focus - rel * clipped;
  let t1 = t0 + clipped;
  if (t0 < limit.t0) {
    t1 += limit.t0 - t0;
    t0 = limit.t0;
  }
  if (t1 > limit.t1) {
    t0 -= t1 - limit.t1;
    t1 = limit.t1;
  }
  return { t0: Math.max(t0, limit.t0), t1: Math.min(t1, limit.t1) };
}

export function panWindow(window: TimeWindow, deltaT: number, limit: TimeWindow): TimeWindow {
  const span = window.t1 - window.t0;
  let t0 = window.t0 + deltaT;
  t0 = Math.max(limit.t0, Math.min(t0, limit.t1 - span));
  return { t0, t1: t0 + span };
}
