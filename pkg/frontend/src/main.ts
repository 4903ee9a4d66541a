/** Explorer bootstrap: overview heatmap, level drop-down with date
 * drill-down, synced video player, single-level strip with hover
 * thumbnails and scrubbing, all round-tripped through the URL fragment. */

import { ApiClient } from "./api.js";
import { drawOverview, fullSpan, panWindow, tileAt, valueRange, xToTime, zoomWindow } from "./heatmap.js";
import type { TimeWindow } from "./heatmap.js";
import { bindPlayer, PlayerSync } from "./player.js";
import {
  dateSelectable,
  deserializeState,
  effectiveDate,
  initialState,
  selectDate,
  selectLevel,
  serializeState,
  setSlot,
  setZoom,
  ViewState,
} from "./state.js";
import { drawStrip, stripSlotAt, stripView, StripView } from "./strip.js";
import { dateOf, dateStartNs, DAY_NS, frameTimeInterval, periodToNs, slotTimeNs } from "./timemap.js";
import type { ManifestDoc, SpectrogramDoc } from "./types.js";

const FPS = 30;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function levelDates(manifest: ManifestDoc): string[] {
  const grid = manifest.levels[0];
  const start = grid.origin_ns;
  const end = slotTimeNs(grid.origin_ns, grid.period_ns, Math.max(grid.count - 1, 0));
  const dates: string[] = [];
  for (let t = Math.floor(start / DAY_NS) * DAY_NS; t <= end; t += DAY_NS) {
    dates.push(dateOf(t));
  }
  return dates;
}

/** Slot range of one calendar date at a level (matches the server's
 * half-open ceil rule). */
function dateSlotRange(manifest: ManifestDoc, level: number, date: string): [number, number] {
  const info = manifest.levels[level];
  const period = periodToNs(info.period_ns);
  const ds = dateStartNs(date);
  const first = Math.max(0, Math.ceil((ds - info.origin_ns) / period));
  const last = Math.min(info.count, Math.ceil((ds + DAY_NS - info.origin_ns) / period));
  return [first, last];
}

class Explorer {
  state: ViewState;
  window: TimeWindow;
  limit: TimeWindow;
  player: PlayerSync | null = null;
  strip: StripView;
  range: [number, number];

  constructor(readonly api: ApiClient, readonly manifest: ManifestDoc,
              readonly spectro: SpectrogramDoc) {
    this.state = deserializeState(location.hash, manifest);
    this.limit = fullSpan(spectro);
    this.window = this.state.zoom ? { t0: this.state.zoom[0], t1: this.state.zoom[1] } : this.limit;
    this.range = valueRange(spectro);
    this.strip = this.makeStrip();
  }

  get overview(): HTMLCanvasElement { return el<HTMLCanvasElement>("overview"); }
  get stripCanvas(): HTMLCanvasElement { return el<HTMLCanvasElement>("strip"); }
  get video(): HTMLVideoElement { return el<HTMLVideoElement>("player"); }

  /** Spectrogram row backing the strip: the viewed level's Laplacian when
   * it exists, else the deepest row. */
  stripRowLevel(): number {
    return Math.max(this.state.level, 1);
  }

  makeStrip(): StripView {
    const row = this.spectro.levels.find((r) => r.level === this.stripRowLevel())!;
    const date = effectiveDate(this.manifest, this.state);
    if (date) {
      const info = this.manifest.levels[row.level - 1];
      const period = periodToNs(info.period_ns);
      const ds = dateStartNs(date);
      const first = Math.max(0, Math.ceil((ds - info.origin_ns) / period));
      const last = Math.min(info.count, Math.ceil((ds + DAY_NS - info.origin_ns) / period));
      return stripView(row, first, last);
    }
    return stripView(row);
  }

  videoMeta(): { url: string; frames: number; firstSlot: number } {
    const level = this.state.level;
    const date = effectiveDate(this.manifest, this.state);
    if (date) {
      const [first, last] = dateSlotRange(this.manifest, level, date);
      return { url: this.api.dayVideoUrl(level, date), frames: last - first, firstSlot: first };
    }
    return { url: this.api.videoUrl(level), frames: this.manifest.levels[level].count, firstSlot: 0 };
  }

  apply(next: ViewState): void {
    const levelChanged = next.level !== this.state.level;
    const dateChanged = next.date !== this.state.date;
    this.state = next;
    if (levelChanged || dateChanged) {
      this.strip = this.makeStrip();
      this.loadVideo();
    }
    location.hash = serializeState(this.state);
    this.render();
  }

  loadVideo(): void {
    const meta = this.videoMeta();
    this.player?.dispose();
    this.video.src = meta.url;
    this.player = bindPlayer(this.video, FPS, meta.frames, (slot) => {
      this.state = setSlot(this.state, slot);
      this.renderStrip();
    });
  }

  render(): void {
    this.renderOverview();
    this.renderStrip();
    this.renderControls();
  }

  renderOverview(): void {
    const canvas = this.overview;
    const ctx = canvas.getContext("2d")!;
    drawOverview(ctx, this.spectro, canvas.width, canvas.height, {
      selectedLevel: Math.max(this.state.level, 1),
      selectedDate: effectiveDate(this.manifest, this.state),
      window: this.window,
    });
  }

  renderStrip(): void {
    const canvas = this.stripCanvas;
    const ctx = canvas.getContext("2d")!;
    const meta = this.videoMeta();
    // Cursor position: playback slot in the video maps onto the strip's
    // source-level slots through the level-vs-strip rate ratio.
    const cursor = this.cursorStripSlot(this.state.slot + meta.firstSlot);
    drawStrip(ctx, this.strip, canvas.width, canvas.height, this.range, cursor);
  }

  /** A level-video slot shown at the strip's (finer) source rate. */
  cursorStripSlot(levelSlot: number): number {
    const level = this.state.level;
    if (level === 0) return levelSlot;
    const stride = this.manifest.strides[level - 1];
    return Math.min(levelSlot * stride + Math.floor(stride / 2),
                    this.strip.row.norms.length + this.strip.row.first_slot - 1);
  }

  stripSlotToVideoSlot(stripSlot: number): number {
    const level = this.state.level;
    const meta = this.videoMeta();
    const levelSlot = level === 0 ? stripSlot : Math.floor(stripSlot / this.manifest.strides[level - 1]);
    return Math.max(0, levelSlot - meta.firstSlot);
  }

  renderControls(): void {
    const select = el<HTMLSelectElement>("level-select");
    select.value = String(this.state.level);
    const dateSelect = el<HTMLSelectElement>("date-select");
    const allowed = dateSelectable(this.manifest, this.state.level);
    dateSelect.disabled = !allowed;
    dateSelect.value = this.state.date ?? "";
    el<HTMLSpanElement>("level-label").textContent =
      this.manifest.levels[this.state.level].label;
  }

  async showHover(stripSlot: number): Promise<void> {
    this.state = { ...this.state, hoverSlot: stripSlot };
    const row = this.strip.row;
    // The strip shows Laplacian tiles at the source level's rate; hover
    // thumbnails come from the matching Gaussian frame below it.
    const level = row.level - 1;
    const info = this.manifest.levels[level];
    const local = frameTimeInterval(info.origin_ns, info.period_ns, stripSlot);
    el<HTMLSpanElement>("hover-time").textContent = local;
    try {
      const { url, frameTime } = await this.api.thumbWithTime(level, stripSlot);
      if (this.state.hoverSlot === stripSlot) {
        el<HTMLImageElement>("hover-thumb").src = url;
        if (frameTime) {
          el<HTMLSpanElement>("hover-time").textContent = frameTime;
        }
      }
    } catch {
      // Keep the locally computed interval if the fetch loses a race.
    }
  }
}

export async function boot(): Promise<void> {
  const api = new ApiClient("");
  const manifest = await api.manifest();
  const spectro = await api.spectrogram(1, manifest.levels.length - 1);
  const app = new Explorer(api, manifest, spectro);

  const select = el<HTMLSelectElement>("level-select");
  for (const info of manifest.levels) {
    const opt = document.createElement("option");
    opt.value = String(info.level);
    opt.textContent = `level ${info.level} (${info.label})`;
    select.append(opt);
  }
  select.addEventListener("change", () => {
    app.apply(selectLevel(app.state, manifest, Number(select.value)));
  });

  const dateSelect = el<HTMLSelectElement>("date-select");
  const blank = document.createElement("option");
  blank.value = "";
  blank.textContent = "whole span";
  dateSelect.append(blank);
  for (const date of levelDates(manifest)) {
    const opt = document.createElement("option");
    opt.value = date;
    opt.textContent = date;
    dateSelect.append(opt);
  }
  dateSelect.addEventListener("change", () => {
    app.apply(selectDate(app.state, dateSelect.value || null));
  });

  const overview = el<HTMLCanvasElement>("overview");
  overview.addEventListener("click", (ev) => {
    const rect = overview.getBoundingClientRect();
    const hit = tileAt(spectro, app.window, overview.width, overview.height,
                       ev.clientX - rect.left, ev.clientY - rect.top);
    if (hit) {
      app.apply(selectLevel(app.state, manifest, hit.level));
    }
  });
  overview.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const rect = overview.getBoundingClientRect();
    const focus = xToTime(ev.clientX - rect.left, app.window, overview.width);
    const factor = ev.deltaY > 0 ? 1.25 : 0.8;
    app.window = zoomWindow(app.window, focus, factor, app.limit);
    app.apply(setZoom(app.state, [app.window.t0, app.window.t1]));
  }, { passive: false });
  let dragX: number | null = null;
  overview.addEventListener("mousedown", (ev) => { dragX = ev.clientX; });
  window.addEventListener("mouseup", () => { dragX = null; });
  overview.addEventListener("mousemove", (ev) => {
    if (dragX !== null) {
      const spanPerPx = (app.window.t1 - app.window.t0) / overview.width;
      app.window = panWindow(app.window, (dragX - ev.clientX) * spanPerPx, app.limit);
      dragX = ev.clientX;
      app.apply(setZoom(app.state, [app.window.t0, app.window.t1]));
    }
  });

  const strip = el<HTMLCanvasElement>("strip");
  strip.addEventListener("mousemove", (ev) => {
    const rect = strip.getBoundingClientRect();
    const slot = stripSlotAt(app.strip, ev.clientX - rect.left, strip.width);
    if (slot !== null) {
      void app.showHover(slot);
      if (ev.buttons & 1) {
        // Dragging scrubs the video along the strip.
        app.player?.seekToSlot(app.stripSlotToVideoSlot(slot));
      }
    }
  });
  strip.addEventListener("click", (ev) => {
    const rect = strip.getBoundingClientRect();
    const slot = stripSlotAt(app.strip, ev.clientX - rect.left, strip.width);
    if (slot !== null) {
      app.player?.seekToSlot(app.stripSlotToVideoSlot(slot));
    }
  });

  app.loadVideo();
  app.render();
}

const underTest = typeof import.meta !== "undefined" &&
  Boolean((import.meta as { env?: { TEST?: boolean } }).env?.TEST);

if (!underTest) {
  boot().catch((err) => {
    const banner = document.getElementById("error-banner");
    if (banner) {
      banner.textContent = `failed to load: ${err}`;
      banner.style.display = "block";
    }
  });
}
