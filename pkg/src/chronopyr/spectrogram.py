"""Per-frame activity norms for each Laplacian level, the logarithmic
display mapping, difference-frame rendering, and heatmap export.

Every Laplacian frame collapses to a single scalar (L2 norm over all
pixels and channels by default), giving a time-vs-timescale grid. Rows
stack with the coarsest level on top, and tiles widen with the level
period. A cell is flagged missing only when its entire input support is
missing; partially-missing support yields a genuine, depressed norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from PIL import Image

from .builder import Pyramid
from .kernels import kernel_for_stride

MISSING_COLOR = (40, 40, 40)

# Perceptually monotone dark-to-bright gradient (viridis anchor points).
_COLOR_ANCHORS = (
    (68, 1, 84), (72, 24, 106), (71, 45, 123), (66, 64, 134),
    (59, 82, 139), (51, 99, 141), (44, 114, 142), (38, 130, 142),
    (33, 145, 140), (31, 160, 136), (40, 174, 128), (63, 188, 115),
    (94, 201, 98), (132, 212, 75), (173, 220, 48), (216, 226, 25),
    (253, 231, 37),
)


def frame_norm(frame: np.ndarray, norm: str = "l2") -> float:
    """Aggregate activity of one Laplacian frame over all pixels/channels."""
    values = np.asarray(frame, dtype=np.float64)
    if norm == "l2":
        return float(np.sqrt(np.sum(values * values)))
    if norm == "l1":
        return float(np.sum(np.abs(values)))
    raise ValueError(f"unknown norm {norm!r}")


def log_map(value: float, floor: float = 1.0) -> float:
    """Monotone log display scale with 0 pinned to 0: log10(v+e) - log10(e)."""
    if floor <= 0:
        raise ValueError("log floor must be positive")
    return math.log10(value + floor) - math.log10(floor)


def render_laplacian(frame: np.ndarray) -> np.ndarray:
    """Map signed difference values to display gray: 0 renders mid-gray 128."""
    shifted = np.rint(128.0 + np.asarray(frame, dtype=np.float64) / 2.0)
    return np.clip(shifted, 0, 255).astype(np.uint8)


@dataclass(frozen=True)
class LevelNorms:
    """One spectrogram row: Laplacian level `level`, tiles spaced at the
    level's source rate."""

    level: int
    origin_ns: int
    tile_period_ns: Fraction
    norms: np.ndarray
    missing: np.ndarray

    @property
    def count(self) -> int:
        return len(self.norms)

    def missing_runs(self) -> list[list[int]]:
        runs: list[list[int]] = []
        start = None
        for i, flag in enumerate(self.missing):
            if flag and start is None:
                start = i
            elif not flag and start is not None:
                runs.append([start, i])
                start = None
        if start is not None:
            runs.append([start, len(self.missing)])
        return runs


@dataclass(frozen=True)
class SpectrogramGrid:
    levels: tuple[LevelNorms, ...]
    norm: str = "l2"

    def level(self, i: int) -> LevelNorms:
        for row in self.levels:
            if row.level == i:
                return row
        raise IndexError(f"no spectrogram row for level {i}")

    def value_range(self) -> tuple[float, float]:
        """Global min/max over non-missing cells."""
        lo, hi = math.inf, -math.inf
        for row in self.levels:
            present = row.norms[~row.missing]
            if len(present):
                lo = min(lo, float(present.min()))
                hi = max(hi, float(present.max()))
        if lo is math.inf:
            return 0.0, 0.0
        return lo, hi


def compute_spectrogram(pyramid: Pyramid, *, norm: str = "l2") -> SpectrogramGrid:
    """One norm per Laplacian frame per level, streamed in a single pass
    per level.

    A cell is flagged missing only when its whole blur window at the source
    rate sits inside a missing run (edge clipping included); a partially
    covered window yields a genuine, depressed norm from the black fill.
    """
    manifest = pyramid.manifest

    rows = []
    for i in range(1, pyramid.levels + 1):
        seq = pyramid.laplacian_level(i)
        n = len(seq)
        kern = kernel_for_stride(manifest.schedule.strides[i - 1])
        parent_mask = seq.grid.missing_mask()
        prefix = np.concatenate([[0], np.cumsum(parent_mask)])

        def window_missing(t: int) -> bool:
            lo = max(t - kern.left, 0)
            hi = min(t + kern.right, n - 1)
            return prefix[hi + 1] - prefix[lo] == hi + 1 - lo

        values = np.empty(n, dtype=np.float64)
        flags = np.zeros(n, dtype=bool)
        for t, frame in enumerate(seq.iter_frames()):
            if window_missing(t):
                flags[t] = True
                values[t] = 0.0
            else:
                values[t] = frame_norm(frame, norm)
        grid = seq.grid
        rows.append(LevelNorms(
            level=i,
            origin_ns=grid.origin_ns,
            tile_period_ns=grid.period_ns,
            norms=values,
            missing=flags,
        ))
    return SpectrogramGrid(tuple(rows), norm=norm)


def colormap(position: float) -> tuple[int, int, int]:
    """Interpolated gradient color for a position in [0, 1]."""
    x = min(max(position, 0.0), 1.0) * (len(_COLOR_ANCHORS) - 1)
    j = min(int(x), len(_COLOR_ANCHORS) - 2)
    frac = x - j
    a, b = _COLOR_ANCHORS[j], _COLOR_ANCHORS[j + 1]
    return tuple(int(round(a[c] + frac * (b[c] - a[c]))) for c in range(3))


def sidecar_data(grid: SpectrogramGrid, rows: Sequence[LevelNorms], epsilon: float) -> dict:
    return {
        "levels": [
            {
                "level": row.level,
                "period_ns": _period_json(row.tile_period_ns),
                "norms": [float(v) for v in row.norms],
                "missing": row.missing_runs(),
            }
            for row in rows
        ],
        "epsilon": epsilon,
        "norm": grid.norm,
    }


def _period_json(period: Fraction):
    period = Fraction(period)
    return int(period) if period.denominator == 1 else [period.numerator, period.denominator]


def export_heatmap(grid: SpectrogramGrid, *, level_range: tuple[int, int] | None = None,
                   time_range_ns: tuple[int, int] | None = None, epsilon: float = 1.0,
                   per_level: bool = False, row_height: int = 16,
                   max_width: int = 4096) -> tuple[Image.Image, dict]:
    """Render the selected window as an RGB heatmap plus its sidecar data.

    One row per level, top level on top; tile width is proportional to the
    level period; colors follow the log display map normalized globally
    (or per level with `per_level`); missing cells use a reserved color.
    """
    if not grid.levels:
        raise ValueError("empty spectrogram")
    lo_level, hi_level = level_range or (grid.levels[0].level, grid.levels[-1].level)
    rows = [row for row in grid.levels if lo_level <= row.level <= hi_level]
    if not rows:
        raise ValueError(f"no levels in range {lo_level}..{hi_level}")

    def row_span(row: LevelNorms) -> tuple[int, int]:
        return row.origin_ns, int(row.origin_ns + row.count * row.tile_period_ns)

    t0 = min(row_span(r)[0] for r in rows)
    t1 = max(row_span(r)[1] for r in rows)
    if time_range_ns is not None:
        t0, t1 = time_range_ns
    if t1 <= t0:
        raise ValueError("empty time range")

    finest = rows[0]
    natural = max(1, int(math.ceil(Fraction(t1 - t0) / finest.tile_period_ns)))
    width = min(natural, max_width)

    if per_level:
        ranges = {}
        for row in rows:
            present = row.norms[~row.missing]
            if len(present):
                ranges[row.level] = (float(present.min()), float(present.max()))
            else:
                ranges[row.level] = (0.0, 0.0)
    else:
        global_range = grid.value_range()
        ranges = {row.level: global_range for row in rows}

    image = np.zeros((row_height * len(rows), width, 3), dtype=np.uint8)
    image[:] = MISSING_COLOR
    clipped_any = False
    for r_idx, row in enumerate(reversed(rows)):
        y0 = r_idx * row_height
        vmin, vmax = ranges[row.level]
        lo_m = log_map(vmin, epsilon)
        hi_m = log_map(vmax, epsilon)
        for k in range(row.count):
            ts = row.origin_ns + k * row.tile_period_ns
            te = ts + row.tile_period_ns
            if te <= t0 or ts >= t1:
                continue
            x0 = int((Fraction(max(ts, t0)) - t0) * width // (t1 - t0))
            x1 = int(math.ceil((Fraction(min(te, t1)) - t0) * width / (t1 - t0)))
            x1 = max(x1, x0 + 1)
            if row.missing[k]:
                color = MISSING_COLOR
            else:
                v = log_map(float(row.norms[k]), epsilon)
                pos = 0.5 if hi_m == lo_m else (v - lo_m) / (hi_m - lo_m)
                color = colormap(pos)
            image[y0:y0 + row_height, x0:min(x1, width)] = color
            clipped_any = True
    if not clipped_any:
        raise ValueError("selection contains no tiles")
    sidecar = sidecar_data(grid, rows, epsilon)
    return Image.fromarray(image), sidecar
