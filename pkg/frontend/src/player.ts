/** Video element wiring: the playback cursor follows media time over the
 * strip, and seeking in either widget drives the other. */

import { mediaTimeToSlot, slotToMediaTime } from "./timemap.js";

export interface PlayerSync {
  /** Slot currently shown, derived from media time. */
  currentSlot(): number;
  seekToSlot(slot: number): void;
  dispose(): void;
}

export function bindPlayer(video: HTMLVideoElement, fps: number, frameCount: number,
                           onSlotChange: (slot: number) => void): PlayerSync {
  let lastSlot = -1;

  const update = () => {
    const slot = mediaTimeToSlot(video.currentTime, fps, frameCount);
    if (slot !== lastSlot) {
      lastSlot = slot;
      onSlotChange(slot);
    }
  };

  // timeupdate alone is too coarse for a smooth cursor; poll each frame
  // where rAF exists (it does not under test).
  const hasRaf = typeof requestAnimationFrame === "function";
  let raf = 0;
  const tick = () => {
    update();
    raf = requestAnimationFrame(tick);
  };
  video.addEventListener("timeupdate", update);
  if (hasRaf) {
    raf = requestAnimationFrame(tick);
  }

  return {
    currentSlot: () => mediaTimeToSlot(video.currentTime, fps, frameCount),
    seekToSlot(slot: number) {
      video.currentTime = slotToMediaTime(slot, fps);
      update();
    },
    dispose() {
      video.removeEventListener("timeupdate", update);
      if (hasRaf) {
        cancelAnimationFrame(raf);
      }
    },
  };
}
