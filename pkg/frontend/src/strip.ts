/** Single-level spectrogram strip under the player: the selected level's
 * tiles enlarged, a playback cursor line, hover hit-testing, and scrub
 * support. */

import { CURSOR_COLOR, gradientCss, MISSING_COLOR } from "./colormap.js";
import type { SpectrogramRow } from "./types.js";

export interface StripView {
  row: SpectrogramRow;
  /** Slot range shown: [first, last) in level slot indices. */
  first: number;
  last: number;
}

export function stripView(row: SpectrogramRow, first?: number, last?: number): StripView {
  const lo = first ?? row.first_slot;
  const hi = last ?? row.first_slot + row.norms.length;
  return { row, first: lo, last: hi };
}

export function stripSlotAt(view: StripView, x: number, width: number): number | null {
  if (view.last <= view.first) return null;
  const slot = view.first + Math.floor((x / width) * (view.last - view.first));
  return slot >= view.first && slot < view.last ? slot : null;
}

export function stripSlotX(view: StripView, slot: number, width: number): number {
  return ((slot + 0.5 - view.first) / (view.last - view.first)) * width;
}

export function tileWidthPx(view: StripView, width: number): number {
  return width / Math.max(view.last - view.first, 1);
}

export function drawStrip(ctx: CanvasRenderingContext2D, view: StripView,
                          width: number, height: number, range: [number, number],
                          cursorSlot: number | null): void {
  const { row } = view;
  const [lo, hi] = range;
  ctx.clearRect(0, 0, width, height);
  const n = view.last - view.first;
  for (let slot = view.first; slot < view.last; slot++) {
    const i = slot - row.first_slot;
    const x0 = Math.floor(((slot - view.first) / n) * width);
    const x1 = Math.max(Math.ceil(((slot + 1 - view.first) / n) * width), x0 + 1);
    if (i < 0 || i >= row.norms.length || row.missing[i]) {
      ctx.fillStyle = MISSING_COLOR;
    } else {
      const pos = hi === lo ? 0.5 : (row.log[i] - lo) / (hi - lo);
      ctx.fillStyle = gradientCss(pos);
    }
    ctx.fillRect(x0, 0, x1 - x0, height);
  }
  if (cursorSlot !== null && cursorSlot >= view.first && cursorSlot < view.last) {
    const x = stripSlotX(view, cursorSlot, width);
    ctx.strokeStyle = CURSOR_COLOR;
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, height);
    ctx.stroke();
  }
}
