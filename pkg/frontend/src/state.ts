/** Explorer view state and its URL-fragment round trip.
 *
 * The selected date survives level changes so drilling down stays anchored
 * to the day being investigated; date selection only applies at levels
 * whose period is five minutes or shorter.
 */

import type { ManifestDoc } from "./types.js";
import { periodToNs } from "./timemap.js";

export const DATE_THRESHOLD_NS = 5 * 60 * 1_000_000_000;

export interface ViewState {
  level: number;
  date: string | null;
  /** Playback slot within the selected level (or day slice). */
  slot: number;
  /** Visible time window of both plots, absolute ns; null = whole span. */
  zoom: [number, number] | null;
  hoverSlot: number | null;
}

export function initialState(manifest: ManifestDoc): ViewState {
  return {
    level: Math.min(manifest.levels.length - 1, manifest.day_level ?? manifest.levels.length - 1),
    date: null,
    slot: 0,
    zoom: null,
    hoverSlot: null,
  };
}

/** Date selection is offered at the five-minute timescale and below. */
export function dateSelectable(manifest: ManifestDoc, level: number): boolean {
  return periodToNs(manifest.levels[level].period_ns) <= DATE_THRESHOLD_NS;
}

/** Whether the current date filter actually applies at this level. */
export function effectiveDate(manifest: ManifestDoc, state: ViewState): string | null {
  return state.date !== null && dateSelectable(manifest, state.level) ? state.date : null;
}

export function selectLevel(state: ViewState, manifest: ManifestDoc, level: number): ViewState {
  if (level < 0 || level >= manifest.levels.length) {
    return state;
  }
  // The date stays selected while navigating between levels.
  return { ...state, level, slot: 0, hoverSlot: null };
}

export function selectDate(state: ViewState, date: string | null): ViewState {
  return { ...state, date, slot: 0 };
}

export function setSlot(state: ViewState, slot: number): ViewState {
  return { ...state, slot };
}

export function setZoom(state: ViewState, zoom: [number, number] | null): ViewState {
  return { ...state, zoom };
}

export function serializeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("level", String(state.level));
  if (state.date) params.set("date", state.date);
  if (state.slot) params.set("slot", String(state.slot));
  if (state.zoom) params.set("zoom", `${state.zoom[0]}-${state.zoom[1]}`);
  return params.toString();
}

export function deserializeState(fragment: string, manifest: ManifestDoc): ViewState {
  const params = new URLSearchParams(fragment.replace(/^#/, ""));
  const state = initialState(manifest);
  const level = Number(params.get("level"));
  if (Number.isInteger(level) && level >= 0 && level < manifest.levels.length) {
    state.level = level;
  }
  const date = params.get("date");
  if (date && /^\d{4}-\d{2}-\d{2}$/.test(date)) {
    state.date = date;
  }
  const slot = Number(params.get("slot"));
  if (Number.isInteger(slot) && slot >= 0) {
    state.slot = slot;
  }
  const zoom = params.get("zoom");
  if (zoom) {
    const m = /^(-?\d+)-(-?\d+)$/.exec(zoom);
    if (m) {
      const lo = Number(m[1]);
      const hi = Number(m[2]);
      if (hi > lo) state.zoom = [lo, hi];
    }
  }
  return state;
}
