"""Reconstruction from pyramid levels: exact when every detail level is
re-added, smooth slow-motion upsampling when lower detail levels are
masked off.

Starting from the top Gaussian video, each stage repeats frames by the
level stride, blurs with that stride's kernel, and adds the stored
Laplacian when its mask bit is set. With all bits set and ending at level
0 the input reappears within float tolerance.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .builder import Pyramid
from .core import ArraySequence, ChronoError, FrameKind, FrameSequence
from .kernels import stream_upsample_blur


def detail_mask(spec: str | Sequence[int] | Sequence[bool], levels: int) -> tuple[bool, ...]:
    """Normalize a mask spec ('all', 'none', or bits like '0110') to one
    bool per pyramid level 1..N."""
    if isinstance(spec, str):
        if spec == "all":
            return (True,) * levels
        if spec == "none":
            return (False,) * levels
        if set(spec) <= {"0", "1"} and spec:
            bits = tuple(c == "1" for c in spec)
        else:
            raise ValueError(f"bad mask spec {spec!r}: want 'all', 'none', or 0/1 bits")
    else:
        bits = tuple(bool(b) for b in spec)
    if len(bits) != levels:
        raise ValueError(f"mask has {len(bits)} bits for {levels} levels")
    return bits


def iter_reconstruct(pyramid: Pyramid, k: int, mask: Sequence[bool]) -> Iterator[np.ndarray]:
    """Stream reconstructed frames at level k without materializing levels."""
    n = pyramid.levels
    if not 0 <= k <= n - 1:
        raise ChronoError(f"ending level {k} outside [0,{n - 1}]")
    bits = detail_mask(mask, n)
    counts = pyramid.manifest.counts

    current = pyramid.gaussian_level(n).iter_frames()
    current_count = counts[n]
    for i in range(n, k, -1):
        stride = pyramid.manifest.schedule.strides[i - 1]
        fine_count = counts[i - 1]
        upsampled = stream_upsample_blur(current, current_count, stride, fine_count)
        if bits[i - 1]:
            detail = pyramid.laplacian_level(i).iter_frames()

            def stage(ups=upsampled, det=detail):
                for f, d in zip(ups, det):
                    yield (np.asarray(f, dtype=np.float64) + np.asarray(d, dtype=np.float64)).astype(np.float32)

            current = stage()
        else:
            current = upsampled
        current_count = fine_count
    return current


class _StreamingSequence(FrameSequence):
    """One-shot sequential view over a reconstruction stream."""

    def __init__(self, grid, shape, kind, iterator):
        super().__init__(grid, shape, kind)
        self._iterator = iterator

    def iter_frames(self):
        return self._iterator

    def _fetch(self, i):
        raise ChronoError("streaming reconstruction supports sequential access only")


def reconstruct_stream(pyramid: Pyramid, k: int, mask: Sequence[bool]) -> FrameSequence:
    """Reconstruction as a single-pass sequence suitable for export piping."""
    frames = iter_reconstruct(pyramid, k, mask)
    return _StreamingSequence(pyramid.manifest.grid(k), pyramid.manifest.shape,
                              FrameKind.GAUSSIAN, frames)


def reconstruct(pyramid: Pyramid, k: int, mask: Sequence[bool]) -> FrameSequence:
    """Materialized reconstruction down to level k with the given detail
    mask; the result carries level k's grid, so missing spans read black."""
    frames = list(iter_reconstruct(pyramid, k, mask))
    grid = pyramid.manifest.grid(k)
    data = np.stack(frames) if frames else np.zeros((0, *pyramid.manifest.shape.numpy_shape), np.float32)
    return ArraySequence(grid, data, kind=FrameKind.GAUSSIAN)


def smooth_upsample(pyramid: Pyramid, level: int, factor_levels: int) -> FrameSequence:
    """Level `level` content played at the (level - factor_levels) rate:
    detail below and at `level` stays masked, structure above is re-added,
    so the blur cascade interpolates smoothly."""
    n = pyramid.levels
    if not 0 <= level <= n:
        raise ChronoError(f"level {level} outside [0,{n}]")
    k = level - factor_levels
    if k < 0:
        raise ChronoError(f"cannot upsample {factor_levels} levels below level {level}")
    if factor_levels == 0 and level == n:
        return pyramid.gaussian_level(n)
    mask = tuple(i + 1 > level for i in range(n))
    return reconstruct(pyramid, k, mask)
