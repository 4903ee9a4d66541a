/** Thin typed client over the pyramid HTTP API. */

import type { ManifestDoc, SpectrogramDoc } from "./types.js";

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async getJson<T>(path: string): Promise<T> {
    const resp = await fetch(this.base + path);
    if (!resp.ok) {
      throw new Error(`${path}: HTTP ${resp.status}`);
    }
    return (await resp.json()) as T;
  }

  manifest(): Promise<ManifestDoc> {
    return this.getJson<ManifestDoc>("/api/manifest");
  }

  spectrogram(levelLo: number, levelHi: number): Promise<SpectrogramDoc> {
    return this.getJson<SpectrogramDoc>(`/api/spectrogram?levels=${levelLo}..${levelHi}`);
  }

  thumbUrl(level: number, slot: number, kind: "G" | "L" = "G"): string {
    const suffix = kind === "L" ? "?kind=L" : "";
    return `${this.base}/api/level/${level}/frame/${slot}/thumb.png${suffix}`;
  }

  videoUrl(level: number, window?: [number, number]): string {
    const query = window ? `?from=${window[0]}&to=${window[1]}` : "";
    return `${this.base}/api/level/${level}/video${query}`;
  }

  dayVideoUrl(level: number, date: string): string {
    return `${this.base}/api/level/${level}/day/${date}/video`;
  }

  /** Fetch a thumbnail plus the server's authoritative frame interval. */
  async thumbWithTime(level: number, slot: number): Promise<{ url: string; frameTime: string }> {
    const url = this.thumbUrl(level, slot);
    const resp = await fetch(url);
    if (!resp.ok) {
      throw new Error(`thumbnail: HTTP ${resp.status}`);
    }
    const blob = await resp.blob();
    return {
      url: URL.createObjectURL(blob),
      frameTime: resp.headers.get("X-Frame-Time") ?? "",
    };
  }
}
