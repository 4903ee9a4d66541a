import { describe, expect, it } from "vitest";

import {
  dateOf,
  dateStartNs,
  frameTimeInterval,
  isoTime,
  mediaTimeToSlot,
  periodToNs,
  slotTimeNs,
  slotToMediaTime,
} from "../src/timemap.js";
import { FRAME_TIMES, MANIFEST } from "./fixtures.js";

describe("isoTime", () => {
  it("formats whole seconds without a fraction", () => {
    expect(isoTime(0)).toBe("1970-01-01T00:00:00Z");
    expect(isoTime(86_400_000_000_000)).toBe("1970-01-02T00:00:00Z");
  });

  it("keeps nanosecond precision with trailing zeros trimmed", () => {
    expect(isoTime(86_400_000_000_123)).toBe("1970-01-02T00:00:00.000000123Z");
    expect(isoTime(1_500_000_000)).toBe("1970-01-01T00:00:01.5Z");
  });
});

describe("frameTimeInterval", () => {
  it("reproduces the server's X-Frame-Time headers exactly", () => {
    for (const [key, expected] of Object.entries(FRAME_TIMES)) {
      const [level, slot] = key.split(":").map(Number);
      const info = MANIFEST.levels[level];
      expect(frameTimeInterval(info.origin_ns, info.period_ns, slot)).toBe(expected);
    }
  });
});

describe("periods", () => {
  it("reads rational nanosecond encodings", () => {
    expect(periodToNs(60_000_000_000)).toBe(60_000_000_000);
    expect(periodToNs([1_000_000_000, 30])).toBeCloseTo(33_333_333.333, 2);
  });

  it("slot times follow origin + slot * period", () => {
    expect(slotTimeNs(1_000, 60_000_000_000, 2)).toBe(120_000_001_000);
  });
});

describe("media time mapping", () => {
  it("round-trips slots through media time within one slot", () => {
    const fps = 30;
    for (const slot of [0, 1, 44, 89]) {
      const t = slotToMediaTime(slot, fps);
      expect(mediaTimeToSlot(t, fps, 90)).toBe(slot);
    }
  });

  it("stays within one tile at the midpoint of a 90-frame video", () => {
    const fps = 30;
    const duration = 90 / fps;
    const slot = mediaTimeToSlot(duration / 2, fps, 90);
    expect(Math.abs(slot - 45)).toBeLessThanOrEqual(1);
  });

  it("clamps to the frame range", () => {
    expect(mediaTimeToSlot(-1, 30, 90)).toBe(0);
    expect(mediaTimeToSlot(999, 30, 90)).toBe(89);
  });
});

describe("dates", () => {
  it("maps timestamps to UTC dates and back", () => {
    expect(dateOf(0)).toBe("1970-01-01");
    expect(dateOf(86_400_000_000_000 + 5)).toBe("1970-01-02");
    expect(dateStartNs("1970-01-02")).toBe(86_400_000_000_000);
  });
});
