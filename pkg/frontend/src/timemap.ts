/** Time arithmetic shared by every widget: slot <-> absolute time <-> media
 * time. Slot times mirror the server exactly (integer nanoseconds, floor on
 * fractional periods) so displayed timestamps match X-Frame-Time headers. */

import type { PeriodNs } from "./types.js";

export function periodToNs(period: PeriodNs): number {
  return Array.isArray(period) ? period[0] / period[1] : period;
}

/** Slot time in integer ns; exact for integer periods, floored otherwise. */
export function slotTimeNs(originNs: number, period: PeriodNs, slot: number): number {
  if (Array.isArray(period)) {
    return originNs + Math.floor((slot * period[0]) / period[1]);
  }
  return originNs + slot * period;
}

export function slotAtTime(originNs: number, period: PeriodNs, tNs: number): number {
  return Math.round((tNs - originNs) / periodToNs(period));
}

/** ISO-8601 UTC with nanosecond precision, trailing zeros trimmed; matches
 * the server's formatting byte for byte. */
export function isoTime(ns: number): string {
  const seconds = Math.floor(ns / 1_000_000_000);
  const frac = ns - seconds * 1_000_000_000;
  const date = new Date(seconds * 1000);
  const pad = (v: number, n = 2) => String(v).padStart(n, "0");
  let stamp =
    `${date.getUTCFullYear()}-${pad(date.getUTCMonth() + 1)}-${pad(date.getUTCDate())}` +
    `T${pad(date.getUTCHours())}:${pad(date.getUTCMinutes())}:${pad(date.getUTCSeconds())}`;
  if (frac > 0) {
    stamp += "." + String(frac).padStart(9, "0").replace(/0+$/, "");
  }
  return stamp + "Z";
}

/** The interval string shown for one frame: "start/end", as served in
 * X-Frame-Time. */
export function frameTimeInterval(originNs: number, period: PeriodNs, slot: number): string {
  const start = slotTimeNs(originNs, period, slot);
  const end = start + Math.floor(periodToNs(period));
  return `${isoTime(start)}/${isoTime(end)}`;
}

/** Map media playback time to the slot index shown at that instant. */
export function mediaTimeToSlot(seconds: number, fps: number, count: number): number {
  const slot = Math.floor(seconds * fps);
  return Math.min(Math.max(slot, 0), count - 1);
}

export function slotToMediaTime(slot: number, fps: number): number {
  return (slot + 0.5) / fps;
}

/** UTC calendar date (YYYY-MM-DD) containing a timestamp. */
export function dateOf(ns: number): string {
  const date = new Date(Math.floor(ns / 1_000_000_000) * 1000);
  const pad = (v: number) => String(v).padStart(2, "0");
  return `${date.getUTCFullYear()}-${pad(date.getUTCMonth() + 1)}-${pad(date.getUTCDate())}`;
}

export const DAY_NS = 86_400_000_000_000;

export function dateStartNs(date: string): number {
  return Date.parse(date + "T00:00:00Z") * 1_000_000;
}
