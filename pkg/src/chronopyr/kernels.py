"""Temporal blur kernels and the filter/subsample/upsample primitives.

All three strides carry their own binomial-shaped kernel:

    stride 2 -> [1, 2, 2, 1] / 6     (4 taps, window [t-1 .. t+2])
    stride 3 -> [1, 2, 3, 2, 1] / 9  (5 taps, centered)
    stride 5 -> [1, 2, 3, 4, 5, 4, 3, 2, 1] / 25  (9 taps, centered)

Boundary handling is edge replication, which preserves constants exactly.
The 4-tap kernel has its center of mass between t and t+1; pairing it with
subsample phase 1 keeps construction and reconstruction aligned.
Accumulation is float64 internally, results are float32.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import (
    ArraySequence,
    FrameSequence,
    FuncSequence,
    TimeGrid,
    subsample_grid,
    subsample_phase,
    subsample_positions,
)

_KERNEL_TAPS = {
    2: (1.0, 2.0, 2.0, 1.0),
    3: (1.0, 2.0, 3.0, 2.0, 1.0),
    5: (1.0, 2.0, 3.0, 4.0, 5.0, 4.0, 3.0, 2.0, 1.0),
}


@dataclass(frozen=True)
class Kernel:
    """Normalized 1-D blur kernel for one subsampling stride."""

    stride: int
    weights: tuple[float, ...]

    @property
    def taps(self) -> int:
        return len(self.weights)

    @property
    def offsets(self) -> range:
        """Window offsets relative to the output index."""
        if self.taps % 2:
            r = self.taps // 2
            return range(-r, r + 1)
        # Even tap count: window [t-1, t+2], center of mass at t+1/2.
        return range(-(self.taps // 2 - 1), self.taps // 2 + 1)

    @property
    def left(self) -> int:
        return -self.offsets.start

    @property
    def right(self) -> int:
        return self.offsets.stop - 1


def kernel_for_stride(stride: int) -> Kernel:
    if stride not in _KERNEL_TAPS:
        raise ValueError(f"unsupported stride: {stride}")
    taps = _KERNEL_TAPS[stride]
    total = sum(taps)
    return Kernel(stride=stride, weights=tuple(w / total for w in taps))


def _blur_array(frames: np.ndarray, kernel: Kernel) -> np.ndarray:
    """Blur along axis 0 with edge replication."""
    n = frames.shape[0]
    padded = np.pad(frames.astype(np.float64), [(kernel.left, kernel.right)] + [(0, 0)] * (frames.ndim - 1), mode="edge")
    acc = np.zeros_like(frames, dtype=np.float64)
    for j, w in zip(range(kernel.taps), kernel.weights):
        acc += w * padded[j:j + n]
    return acc.astype(np.float32)


def temporal_blur(seq: FrameSequence, kernel: Kernel) -> ArraySequence:
    """Blur a sequence in time; output has the same grid and kind.

    Missing slots participate as black frames with no renormalization, so
    missing data darkens its neighborhood instead of being inpainted.
    """
    if len(seq) == 0:
        raise ValueError("cannot blur an empty sequence")
    blurred = _blur_array(seq.to_array(), kernel)
    return ArraySequence(seq.grid, blurred, kind=seq.kind)


def subsample(seq: FrameSequence, stride: int) -> FrameSequence:
    """Keep one frame per `stride`: output k reads input k*stride + phase
    (tail clamped). The output grid period grows by `stride` and missing
    runs follow the sampled slots."""
    grid = subsample_grid(seq.grid, stride)
    positions = subsample_positions(seq.grid.count, stride)
    return FuncSequence(grid, seq.shape, seq.kind, lambda k: seq.frame(int(positions[k])))


def repeat_positions(n_fine: int, stride: int) -> np.ndarray:
    """Coarse index feeding each fine slot when frames are repeated."""
    return np.arange(n_fine) // stride


def upsample_blur(seq: FrameSequence, stride: int, *, target_count: int | None = None,
                  target_grid: TimeGrid | None = None) -> ArraySequence:
    """Repeat each frame `stride` times, then blur with that stride's kernel.

    `target_count` truncates (or edge-pads) the repeated sequence to a finer
    level's recorded frame count during reconstruction.
    """
    n = len(seq)
    if n == 0:
        raise ValueError("cannot upsample an empty sequence")
    coarse = seq.to_array()
    fine_count = n * stride if target_count is None else target_count
    idx = np.minimum(repeat_positions(fine_count, stride), n - 1)
    fine = coarse[idx]
    blurred = _blur_array(fine, kernel_for_stride(stride))
    if target_grid is None:
        phase = subsample_phase(stride)
        period = seq.grid.period_ns / stride
        origin = seq.grid.origin_ns - int(phase * period)
        runs = []
        for s, e in seq.grid.missing:
            runs.append((s * stride, min(e * stride, fine_count)))
        target_grid = TimeGrid(origin, period, fine_count, tuple(runs))
    return ArraySequence(target_grid, blurred, kind=seq.kind)


def stream_upsample_blur(coarse_frames: Iterator[np.ndarray], coarse_count: int,
                         stride: int, fine_count: int) -> Iterator[np.ndarray]:
    """Streaming repeat-then-blur: yields `fine_count` frames while holding
    only the kernel's worth of coarse frames."""
    kernel = kernel_for_stride(stride)
    weights = kernel.weights
    buf: list[np.ndarray] = []
    base = 0
    max_coarse = coarse_count - 1

    def need(t: int) -> int:
        hi_fine = min(t + kernel.right, fine_count - 1)
        return min(hi_fine // stride, max_coarse)

    it = iter(coarse_frames)
    pulled = 0
    for t in range(fine_count):
        while pulled <= need(t):
            buf.append(np.asarray(next(it), dtype=np.float64))
            pulled += 1
        window = []
        for off in kernel.offsets:
            fine_idx = min(max(t + off, 0), fine_count - 1)
            ci = min(fine_idx // stride, max_coarse)
            window.append(buf[ci - base])
        acc = np.zeros(window[0].shape, dtype=np.float64)
        for w, f in zip(weights, window):
            acc += w * f
        yield acc.astype(np.float32)
        # Coarse frames below the next window's reach can go.
        keep_from = max((t + 1 - kernel.left), 0) // stride
        while base < min(keep_from, max_coarse):
            buf.pop(0)
            base += 1
