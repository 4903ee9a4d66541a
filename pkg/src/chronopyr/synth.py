"""Synthetic multi-timescale test scenes, a naive reference pyramid, and
the timelapse-by-subsampling baseline.

The reference pyramid is deliberately plain: fully materialized arrays and
a per-frame convolution loop, sharing nothing with the streaming builder
except the kernel constants, so the two cannot share bugs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    DAY_NS,
    ArraySequence,
    ChronoError,
    FrameKind,
    FrameSequence,
    FrameShape,
    FuncSequence,
    LevelSchedule,
    PyramidManifest,
    TimeGrid,
    subsample_grid,
    subsample_phase,
)
from .builder import Pyramid
from .kernels import kernel_for_stride

ORACLE_MAX_FRAMES = 100_000
ORACLE_MAX_PIXELS = 32 * 32


@dataclass(frozen=True)
class Region:
    """Pixel box [x0, x1) x [y0, y1); None fields span the whole frame."""

    x0: int = 0
    y0: int = 0
    x1: int | None = None
    y1: int | None = None

    def slices(self, shape: FrameShape) -> tuple[slice, slice]:
        x1 = self.x1 if self.x1 is not None else shape.width
        y1 = self.y1 if self.y1 is not None else shape.height
        if not (0 <= self.x0 < x1 <= shape.width and 0 <= self.y0 < y1 <= shape.height):
            raise ValueError(f"region {self} outside {shape.width}x{shape.height} frame")
        return slice(self.y0, y1), slice(self.x0, x1)


@dataclass(frozen=True)
class Sinusoid:
    period_slots: float
    amplitude: float
    phase: float = 0.0
    region: Region = Region()

    def value(self, slot: int, time_ns: int) -> float:
        return self.amplitude * math.sin(2 * math.pi * slot / self.period_slots + self.phase)


@dataclass(frozen=True)
class Blip:
    start_slot: int
    duration: int
    amplitude: float
    region: Region = Region()

    def value(self, slot: int, time_ns: int) -> float:
        return self.amplitude if self.start_slot <= slot < self.start_slot + self.duration else 0.0


@dataclass(frozen=True)
class Ramp:
    rate: float
    region: Region = Region()

    def value(self, slot: int, time_ns: int) -> float:
        return self.rate * slot


@dataclass(frozen=True)
class DayNight:
    """Square wave keyed to the UTC time of day: plateaus at `day_value` /
    `night_value`, plus an optional frame-parity flicker during the day
    half to model daytime activity."""

    day_fraction: float = 0.5
    day_value: float = 0.0
    night_value: float = 0.0
    day_flicker: float = 0.0
    region: Region = Region()

    def value(self, slot: int, time_ns: int) -> float:
        tod = (time_ns % DAY_NS) / DAY_NS
        if tod < self.day_fraction:
            flick = self.day_flicker * (1.0 if slot % 2 == 0 else -1.0)
            return self.day_value + flick
        return self.night_value


@dataclass(frozen=True)
class Noise:
    """Seeded gaussian noise, drawn independently per slot so lazy access
    stays deterministic."""

    std: float
    region: Region = Region()


Component = Sinusoid | Blip | Ramp | DayNight | Noise


@dataclass(frozen=True)
class SceneSpec:
    width: int
    height: int
    count: int
    period_ns: Fraction
    origin_ns: int = 0
    channels: int = 1
    base: float = 0.0
    components: tuple[Component, ...] = ()
    missing: tuple[tuple[int, int], ...] = ()
    seed: int = 0

    @property
    def shape(self) -> FrameShape:
        return FrameShape(self.width, self.height, self.channels)

    def grid(self) -> TimeGrid:
        return TimeGrid(self.origin_ns, self.period_ns, self.count, self.missing)


def generate(spec: SceneSpec) -> FrameSequence:
    """Deterministic lazy scene: components summed over the base intensity,
    clamped to [0, 255]. Missing spans read as black frames."""
    shape = spec.shape
    grid = spec.grid()
    for comp in spec.components:
        comp.region.slices(shape)

    def fn(i: int) -> np.ndarray:
        frame = np.full(shape.numpy_shape, spec.base, dtype=np.float64)
        t_ns = grid.slot_time(i)
        for ci, comp in enumerate(spec.components):
            ys, xs = comp.region.slices(shape)
            if isinstance(comp, Noise):
                rng = np.random.default_rng((spec.seed, ci, i))
                frame[ys, xs, :] += rng.normal(0.0, comp.std, frame[ys, xs, :].shape)
            else:
                frame[ys, xs, :] += comp.value(i, t_ns)
        return np.clip(frame, 0.0, 255.0).astype(np.float32)

    return FuncSequence(grid, shape, FrameKind.INPUT, fn)


_COMPONENT_TYPES = {
    "sinusoid": Sinusoid,
    "blip": Blip,
    "ramp": Ramp,
    "daynight": DayNight,
    "noise": Noise,
}


def scene_from_json(text: str) -> SceneSpec:
    """Parse a scene description from a JSON document."""
    doc = json.loads(text)
    comps = []
    for entry in doc.get("components", []):
        entry = dict(entry)
        kind = entry.pop("type")
        if kind not in _COMPONENT_TYPES:
            raise ValueError(f"unknown component type {kind!r}")
        if "region" in entry:
            entry["region"] = Region(**entry["region"])
        comps.append(_COMPONENT_TYPES[kind](**entry))
    period = doc["period_ns"]
    if isinstance(period, list):
        period = Fraction(period[0], period[1])
    return SceneSpec(
        width=doc["width"],
        height=doc["height"],
        count=doc["count"],
        period_ns=Fraction(period),
        origin_ns=doc.get("origin_ns", 0),
        channels=doc.get("channels", 1),
        base=doc.get("base", 0.0),
        components=tuple(comps),
        missing=tuple((s, e) for s, e in doc.get("missing", [])),
        seed=doc.get("seed", 0),
    )


def _naive_blur(frames: np.ndarray, stride: int) -> np.ndarray:
    """Textbook per-frame convolution with index clamping."""
    kernel = kernel_for_stride(stride)
    n = frames.shape[0]
    out = np.empty_like(frames, dtype=np.float32)
    for t in range(n):
        acc = np.zeros(frames.shape[1:], dtype=np.float64)
        for w, off in zip(kernel.weights, kernel.offsets):
            j = min(max(t + off, 0), n - 1)
            acc += w * frames[j].astype(np.float64)
        out[t] = acc
    return out


def oracle_pyramid(source: FrameSequence, schedule: LevelSchedule) -> Pyramid:
    """Reference pyramid: materialize everything, loop frame by frame.

    Only valid for small inputs; the size bound keeps it honest as a test
    oracle rather than a production path.
    """
    if len(source) > ORACLE_MAX_FRAMES:
        raise ChronoError(f"oracle input exceeds {ORACLE_MAX_FRAMES} frames")
    if source.shape.width * source.shape.height > ORACLE_MAX_PIXELS:
        raise ChronoError(f"oracle input exceeds {ORACLE_MAX_PIXELS} pixels per frame")

    grids = [source.grid]
    gaussian: list[FrameSequence | None] = [source]
    laplacian: list[FrameSequence | None] = [None]
    v = source.to_array()
    grid = source.grid
    for stride in schedule.strides:
        n = v.shape[0]
        phase = subsample_phase(stride)
        blurred = _naive_blur(v, stride)
        out_grid = subsample_grid(grid, stride)
        m = out_grid.count
        g = np.empty((m, *v.shape[1:]), dtype=np.float32)
        for k in range(m):
            pos = min(k * stride + phase, n - 1)
            g[k] = 0.0 if grid.is_missing(pos) else blurred[pos]
        up = np.empty_like(v)
        for t in range(n):
            up[t] = g[min(t // stride, m - 1)]
        fstar = _naive_blur(up, stride)
        lap = (v.astype(np.float64) - fstar.astype(np.float64)).astype(np.float32)
        gaussian.append(ArraySequence(out_grid, g, kind=FrameKind.GAUSSIAN))
        laplacian.append(ArraySequence(grid, lap, kind=FrameKind.LAPLACIAN))
        grids.append(out_grid)
        v, grid = g, out_grid
    manifest = PyramidManifest(
        schedule=schedule,
        shape=source.shape,
        origin_ns=source.grid.origin_ns,
        counts=tuple(gr.count for gr in grids),
        missing=tuple(gr.missing for gr in grids),
    )
    return Pyramid(manifest, gaussian, laplacian)


def timelapse_subsample(source: FrameSequence, stride: int) -> FrameSequence:
    """The aliasing-prone baseline: keep every `stride`-th frame starting at
    slot 0, with no filtering."""
    if stride < 1:
        raise ValueError("stride must be >= 1")
    n = source.grid.count
    count = -(-n // stride)
    runs = []
    for s, e in source.grid.missing:
        lo = -(-s // stride)
        hi = min(count, -(-e // stride))
        if hi > lo:
            runs.append((lo, hi))
    grid = TimeGrid(source.grid.origin_ns, source.grid.period_ns * stride, count, tuple(runs))
    return FuncSequence(grid, source.shape, source.kind,
                        lambda k: source.frame(k * stride))


def band_energy_profile(pyramid: Pyramid) -> np.ndarray:
    """Mean squared frame norm per Laplacian level (index 0 = level 1)."""
    profile = []
    for i in range(1, pyramid.levels + 1):
        seq = pyramid.laplacian_level(i)
        total = 0.0
        for frame in seq.iter_frames():
            total += float(np.sum(frame.astype(np.float64) ** 2))
        profile.append(total / max(len(seq), 1))
    return np.asarray(profile)
