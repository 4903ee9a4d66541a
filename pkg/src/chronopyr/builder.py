"""Streaming pyramid construction: one pass per level with bounded buffers,
plus one-day shard parallelization with drop-day merging for yearly scales.

Each level applies blur -> subsample to produce the next Gaussian video and
subtracts the blurred-upsampled result from its source to produce the
Laplacian video, all in a single sweep over the source with a look-ahead
window of a few kernel widths. Levels chain as generators, so an entire
pyramid is built in one pass over the input regardless of its length.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

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
    subsampled_count,
)
from .kernels import kernel_for_stride


class ShardError(ChronoError):
    """Raised when shard planning or a shard worker fails."""


@dataclass
class Pyramid:
    """Built pyramid: Gaussian levels 0..N (0 is the input) and Laplacian
    levels 1..N, where laplacian[i] runs at gaussian[i-1]'s rate."""

    manifest: PyramidManifest
    gaussian: list[FrameSequence | None]
    laplacian: list[FrameSequence | None]
    stats: dict = field(default_factory=dict)

    @property
    def levels(self) -> int:
        return self.manifest.levels

    def gaussian_level(self, i: int) -> FrameSequence:
        seq = self.gaussian[i]
        if seq is None:
            raise ChronoError(f"gaussian level {i} was not retained")
        return seq

    def laplacian_level(self, i: int) -> FrameSequence:
        if not 1 <= i <= self.levels:
            raise IndexError(f"laplacian level {i} outside [1,{self.levels}]")
        seq = self.laplacian[i]
        if seq is None:
            raise ChronoError(f"laplacian level {i} was not retained")
        return seq


class MemorySink:
    """Collects appended frames into an ArraySequence."""

    def __init__(self, grid: TimeGrid, shape: FrameShape, kind: FrameKind):
        self.grid = grid
        self.shape = shape
        self.kind = kind
        self._frames: list[np.ndarray] = []

    def append(self, frame: np.ndarray) -> None:
        self._frames.append(frame)

    def finish(self) -> ArraySequence:
        if self._frames:
            data = np.stack(self._frames)
        else:
            data = np.zeros((0, *self.shape.numpy_shape), dtype=np.float32)
        self._frames = []
        return ArraySequence(self.grid, data, kind=self.kind)


class NullSink:
    """Discards frames; used for throughput benchmarking."""

    def __init__(self, grid, shape, kind):
        self.count = 0

    def append(self, frame) -> None:
        self.count += 1

    def finish(self):
        return None


SinkFactory = Callable[[int, FrameKind, TimeGrid, FrameShape], object]


def memory_sink_factory(level: int, kind: FrameKind, grid: TimeGrid, shape: FrameShape):
    return MemorySink(grid, shape, kind)


def null_sink_factory(level, kind, grid, shape):
    return NullSink(grid, shape, kind)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class _LevelStream:
    """One-pass blur/subsample/difference over source slots [lo, hi).

    Reads clamp to [lo, hi-1], which doubles as global edge replication for
    a monolithic build and as the per-shard clamp for day shards. Sample
    positions are global, so stitched shard outputs line up slot-for-slot
    with a monolithic build away from shard edges.
    """

    def __init__(self, stride: int, n_total: int, lo: int, hi: int,
                 src_missing: Callable[[int], bool]):
        self.stride = stride
        self.kernel = kernel_for_stride(stride)
        self.phase = subsample_phase(stride)
        self.n_total = n_total
        self.lo = lo
        self.hi = hi
        self.src_missing = src_missing
        m_total = subsampled_count(n_total, stride)
        self.k_lo = max(0, _ceil_div(lo - self.phase, stride))
        self.k_hi = m_total if hi >= n_total else _ceil_div(hi - self.phase, stride)
        if hi > lo and self.k_hi <= self.k_lo:
            # Needs at least one sample position inside the range; shard
            # planning folds sub-day edges into neighbors to guarantee it.
            raise ChronoError(
                f"slot range [{lo},{hi}) holds no stride-{stride} sample"
            )
        self.max_resident = 0

    def _pos(self, k: int) -> int:
        return min(min(k * self.stride + self.phase, self.n_total - 1), self.hi - 1)

    def run(self, frames: Iterable[np.ndarray]) -> Iterator[tuple[str, int, np.ndarray]]:
        kern = self.kernel
        weights = kern.weights
        offsets = list(kern.offsets)
        lo, hi, s = self.lo, self.hi, self.stride
        x_buf: list[np.ndarray] = []
        x_base = lo
        g_buf: list[np.ndarray] = []
        g_base = self.k_lo
        next_g = self.k_lo
        next_l = lo
        i = lo - 1

        def g_need(t: int) -> int:
            return min(max(min(t + kern.right, hi - 1) // s, self.k_lo), self.k_hi - 1)

        for frame in frames:
            i += 1
            x_buf.append(np.asarray(frame, dtype=np.float64))
            self.max_resident = max(self.max_resident, len(x_buf) + len(g_buf))
            while True:
                if next_g < self.k_hi and min(self._pos(next_g) + kern.right, hi - 1) <= i:
                    pos = self._pos(next_g)
                    acc = np.zeros(x_buf[0].shape, dtype=np.float64)
                    for w, off in zip(weights, offsets):
                        acc += w * x_buf[min(max(pos + off, lo), hi - 1) - x_base]
                    if self.src_missing(pos):
                        g = np.zeros(x_buf[0].shape, dtype=np.float32)
                    else:
                        g = acc.astype(np.float32)
                    g_buf.append(np.asarray(g, dtype=np.float64))
                    self.max_resident = max(self.max_resident, len(x_buf) + len(g_buf))
                    yield ("g", next_g, g)
                    next_g += 1
                    continue
                if next_l < hi and next_l <= i and (next_g > g_need(next_l) or next_g == self.k_hi):
                    acc = np.zeros(x_buf[0].shape, dtype=np.float64)
                    for w, off in zip(weights, offsets):
                        u_idx = min(max(next_l + off, lo), hi - 1)
                        gi = min(max(u_idx // s, self.k_lo), self.k_hi - 1)
                        acc += w * g_buf[gi - g_base]
                    lap = (x_buf[next_l - x_base] - acc).astype(np.float32)
                    yield ("l", next_l, lap)
                    next_l += 1
                    # Trim buffers to what future outputs can still touch.
                    keep_x = next_l
                    if next_g < self.k_hi:
                        keep_x = min(keep_x, max(self._pos(next_g) - kern.left, lo))
                    while x_base < keep_x:
                        x_buf.pop(0)
                        x_base += 1
                    keep_g = min(max(max(next_l - kern.left, lo) // s, self.k_lo), self.k_hi - 1)
                    while g_base < keep_g:
                        g_buf.pop(0)
                        g_base += 1
                    continue
                break
        if next_l != hi or next_g != self.k_hi:
            raise ChronoError(
                f"source ended early: got {i + 1 - lo} frames for slots [{lo},{hi})"
            )


def level_grids(grid: TimeGrid, schedule: LevelSchedule) -> list[TimeGrid]:
    """Gaussian grids for levels 0..N by repeated subsampling."""
    grids = [grid]
    for s in schedule.strides:
        grids.append(subsample_grid(grids[-1], s))
    return grids


_STATS_LOCK = threading.Lock()


def _run_levels(frames: Iterator[np.ndarray], grids: Sequence[TimeGrid],
                strides: Sequence[int], first_level: int,
                ranges: Sequence[tuple[int, int]],
                on_output: Callable[[int, str, int, np.ndarray], None],
                stats: dict) -> None:
    """Chain level streamers over `frames` and drain the pipeline.

    `ranges[j]` bounds the source slots of level first_level+j; grids and
    strides are indexed the same way. Gaussian frames of each level feed the
    next level's streamer without materializing.
    """

    def chain(parent: Iterator[np.ndarray], j: int) -> Iterator[np.ndarray]:
        level = first_level + j
        lo, hi = ranges[j]
        stream = _LevelStream(strides[j], grids[j].count, lo, hi, grids[j].is_missing)
        key = f"level_{level}_max_resident"

        def gen():
            for tag, idx, frame in stream.run(parent):
                on_output(level, tag, idx, frame)
                if tag == "g":
                    yield frame
            with _STATS_LOCK:
                stats[key] = max(stats.get(key, 0), stream.max_resident)

        return gen()

    it = frames
    ranges = list(ranges)
    for j in range(len(strides)):
        it = chain(it, j)
    for _ in it:
        pass


def _slice_iter(seq: FrameSequence, lo: int, hi: int) -> Iterator[np.ndarray]:
    for i in range(lo, hi):
        yield seq.frame(i)


def build_level(source: FrameSequence, stride: int) -> tuple[FrameSequence, FrameSequence]:
    """One pyramid step: returns (gaussian, laplacian) for a single stride.

    gaussian = subsample(blur(source)); laplacian = source - blur(upsample
    (gaussian)), at the source's rate. Computed in one pass with a bounded
    look-ahead window.
    """
    if len(source) == 0:
        raise ValueError("cannot build a level from an empty sequence")
    out_grid = subsample_grid(source.grid, stride)
    gsink = MemorySink(out_grid, source.shape, FrameKind.GAUSSIAN)
    lsink = MemorySink(source.grid, source.shape, FrameKind.LAPLACIAN)
    stream = _LevelStream(stride, source.grid.count, 0, source.grid.count,
                          source.grid.is_missing)
    for tag, _, frame in stream.run(source.iter_frames()):
        (gsink if tag == "g" else lsink).append(frame)
    return gsink.finish(), lsink.finish()


def build_pyramid(source: FrameSequence, schedule: LevelSchedule, *,
                  sink_factory: SinkFactory = memory_sink_factory) -> Pyramid:
    """Build all levels in a single streaming pass over the input."""
    if source.grid.period_ns != schedule.base_period_ns:
        raise ChronoError(
            f"input period {source.grid.period_ns} != schedule base period {schedule.base_period_ns}"
        )
    grids = level_grids(source.grid, schedule)
    n = schedule.levels
    gsinks: list[object | None] = [None]
    lsinks: list[object | None] = [None]
    for i in range(1, n + 1):
        gsinks.append(sink_factory(i, FrameKind.GAUSSIAN, grids[i], source.shape))
        lsinks.append(sink_factory(i, FrameKind.LAPLACIAN, grids[i - 1], source.shape))

    def on_output(level: int, tag: str, idx: int, frame: np.ndarray) -> None:
        (gsinks[level] if tag == "g" else lsinks[level]).append(frame)

    stats: dict = {}
    ranges = [(0, grids[i].count) for i in range(n)]
    _run_levels(source.iter_frames(), grids[:-1], schedule.strides, 1, ranges,
                on_output, stats)
    manifest = PyramidManifest(
        schedule=schedule,
        shape=source.shape,
        origin_ns=source.grid.origin_ns,
        counts=tuple(g.count for g in grids),
        missing=tuple(g.missing for g in grids),
    )
    gaussian: list[FrameSequence | None] = [source]
    laplacian: list[FrameSequence | None] = [None]
    for i in range(1, n + 1):
        gaussian.append(gsinks[i].finish())
        laplacian.append(lsinks[i].finish())
    return Pyramid(manifest, gaussian, laplacian, stats)


def fill_missing(grid: TimeGrid, shape: FrameShape,
                 fetch: Callable[[int], np.ndarray] | None = None) -> FrameSequence:
    """Frame provider that yields all-zero frames at missing slots and keeps
    the mask intact for downstream flagging."""
    if fetch is None:
        zero = np.zeros(shape.numpy_shape, dtype=np.float32)
        fetch = lambda i: zero
    return FuncSequence(grid, shape, FrameKind.INPUT, fetch)


@dataclass(frozen=True)
class Shard:
    day_index: int
    start_slot: int
    end_slot: int
    date: str

    @property
    def slots(self) -> int:
        return self.end_slot - self.start_slot


@dataclass(frozen=True)
class ShardPlan:
    """Day-aligned shard boundaries plus the days dropped to reach a
    360-day year, and the level at which shard outputs merge."""

    shards: tuple[Shard, ...]
    drop_days: tuple[str, ...]
    merge_level: int

    def worklist(self) -> str:
        lines = [f"{s.day_index}\t{s.start_slot}\t{s.end_slot}" for s in self.shards]
        return "\n".join(lines) + "\n"


def _utc_date(day_epoch: int) -> datetime:
    return datetime.fromtimestamp(day_epoch * 86_400, tz=timezone.utc)


def _is_leap(year: int) -> bool:
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def _missing_in(grid: TimeGrid, start: int, end: int) -> int:
    total = 0
    for s, e in grid.missing:
        total += max(0, min(e, end) - max(s, start))
    return total


def plan_shards(grid: TimeGrid, schedule: LevelSchedule) -> ShardPlan:
    """One shard per UTC calendar day (first/last may be partial). For every
    complete calendar year, the 5 days (6 in a leap year) with the most
    missing slots are marked for dropping, earliest date first on ties."""
    if schedule.day_level is None:
        raise ShardError("schedule has no one-day level; cannot shard by day")
    span = grid.span_ns
    if span < DAY_NS:
        raise ShardError("input spans less than one day; build monolithically")

    first_day = grid.origin_ns // DAY_NS
    last_day = math.ceil((Fraction(grid.origin_ns) + span) / DAY_NS) - 1
    full_days = round(DAY_NS / grid.period_ns)
    shards: list[Shard] = []
    for idx, day in enumerate(range(first_day, last_day + 1)):
        start = max(0, _ceil_div_frac(day * DAY_NS - grid.origin_ns, grid.period_ns))
        end = min(grid.count, _ceil_div_frac((day + 1) * DAY_NS - grid.origin_ns, grid.period_ns))
        if end <= start:
            continue
        shards.append(Shard(idx, start, end, _utc_date(day).date().isoformat()))
    # A sub-day edge shard may have no sample at coarse levels, which the
    # shard-local cascade cannot handle; fold partial first/last days into
    # their neighbor instead.
    if len(shards) > 1 and shards[0].slots < full_days:
        a, b = shards[0], shards[1]
        shards[:2] = [Shard(b.day_index, a.start_slot, b.end_slot, b.date)]
    if len(shards) > 1 and shards[-1].slots < full_days:
        a, b = shards[-2], shards[-1]
        shards[-2:] = [Shard(a.day_index, a.start_slot, b.end_slot, a.date)]

    by_year: dict[int, list[Shard]] = {}
    for shard in shards:
        by_year.setdefault(int(shard.date[:4]), []).append(shard)
    drops: list[str] = []
    for year, year_shards in sorted(by_year.items()):
        first = datetime(year, 1, 1, tzinfo=timezone.utc).date().isoformat()
        last = datetime(year, 12, 31, tzinfo=timezone.utc).date().isoformat()
        dates = {s.date for s in year_shards}
        year_complete = first in dates and last in dates and all(
            s.slots == full_days for s in year_shards
        )
        if not year_complete:
            continue
        want = 6 if _is_leap(year) else 5
        ranked = sorted(
            year_shards,
            key=lambda s: (-_missing_in(grid, s.start_slot, s.end_slot), s.date),
        )
        drops.extend(s.date for s in ranked[:want])
    return ShardPlan(tuple(shards), tuple(sorted(drops)), schedule.day_level)


def _ceil_div_frac(a, b) -> int:
    return int(math.ceil(Fraction(a) / Fraction(b)))


def write_worklist(plan: ShardPlan, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(plan.worklist())


def _shard_ranges(grids: Sequence[TimeGrid], strides: Sequence[int],
                  lo: int, hi: int, merge_level: int) -> list[tuple[int, int]]:
    """Slot ranges covered by one shard at each source level 0..merge_level-1."""
    ranges = [(lo, hi)]
    for j in range(merge_level - 1):
        plo, phi = ranges[-1]
        s = strides[j]
        phase = subsample_phase(s)
        n_parent = grids[j].count
        m = subsampled_count(n_parent, s)
        klo = max(0, _ceil_div(plo - phase, s))
        khi = m if phi >= n_parent else _ceil_div(phi - phase, s)
        ranges.append((klo, khi))
    return ranges


def build_sharded(source: FrameSequence, schedule: LevelSchedule, plan: ShardPlan,
                  workers: int = 1, *,
                  sink_factory: SinkFactory = memory_sink_factory) -> Pyramid:
    """Build day shards independently (levels 1..day_level, clamped at shard
    edges), stitch the one-frame-per-day Gaussian level with drop days
    omitted, then build the remaining levels from the stitched sequence.

    Matches a monolithic build on every slot whose kernel support stays
    inside a single day; slots straddling midnight may differ.
    """
    merge = plan.merge_level
    grids = level_grids(source.grid, schedule)
    n = schedule.levels
    shape = source.shape
    stats: dict = {}

    # Day-level slot -> calendar date, for drop filtering.
    day_grid = grids[merge]
    drop = set(plan.drop_days)
    kept = [k for k in range(day_grid.count)
            if _utc_date(day_grid.slot_time(k) // DAY_NS).date().isoformat() not in drop]
    kept_set = set(kept)

    shard_outputs: dict[int, dict] = {}

    def run_shard(shard: Shard) -> None:
        ranges = _shard_ranges(grids, schedule.strides, shard.start_slot, shard.end_slot, merge)
        outputs: dict = {(tag, level): [] for tag in ("g", "l") for level in range(1, merge + 1)}

        def on_output(level, tag, idx, frame):
            outputs[(tag, level)].append((idx, frame))

        try:
            _run_levels(_slice_iter(source, shard.start_slot, shard.end_slot),
                        [grids[j] for j in range(merge)],
                        schedule.strides[:merge], 1, ranges, on_output, stats)
        except ChronoError:
            raise
        except Exception as exc:
            raise ShardError(f"shard for {shard.date} failed: {exc}") from exc
        shard_outputs[shard.day_index] = outputs

    if workers <= 1:
        for shard in plan.shards:
            run_shard(shard)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for fut in [pool.submit(run_shard, s) for s in plan.shards]:
                fut.result()

    # Assemble levels 1..merge from shard outputs in shard order.
    gsinks: list[object | None] = [None] * (n + 1)
    lsinks: list[object | None] = [None] * (n + 1)
    kept_day_frames: list[np.ndarray] = []

    post_day_grid = TimeGrid(
        origin_ns=day_grid.origin_ns,
        period_ns=day_grid.period_ns,
        count=len(kept),
        missing=_runs_from_flags([day_grid.is_missing(k) for k in kept]),
    )
    sub_grids = [grids[i] for i in range(merge + 1)]
    for i in range(1, merge + 1):
        out_grid = post_day_grid if i == merge else sub_grids[i]
        gsinks[i] = sink_factory(i, FrameKind.GAUSSIAN, out_grid, shape)
        lsinks[i] = sink_factory(i, FrameKind.LAPLACIAN, sub_grids[i - 1], shape)

    for shard in plan.shards:
        outputs = shard_outputs[shard.day_index]
        for level in range(1, merge + 1):
            for _, frame in outputs[("l", level)]:
                lsinks[level].append(frame)
            for idx, frame in outputs[("g", level)]:
                if level == merge:
                    if idx in kept_set:
                        gsinks[level].append(frame)
                        kept_day_frames.append(frame)
                else:
                    gsinks[level].append(frame)

    gaussian: list[FrameSequence | None] = [source] + [None] * n
    laplacian: list[FrameSequence | None] = [None] * (n + 1)
    for i in range(1, merge + 1):
        gaussian[i] = gsinks[i].finish()
        laplacian[i] = lsinks[i].finish()

    # Remaining levels from the stitched day sequence.
    upper_grids = [post_day_grid]
    for s in schedule.strides[merge:]:
        upper_grids.append(subsample_grid(upper_grids[-1], s))
    for j, i in enumerate(range(merge + 1, n + 1)):
        gsinks[i] = sink_factory(i, FrameKind.GAUSSIAN, upper_grids[j + 1], shape)
        lsinks[i] = sink_factory(i, FrameKind.LAPLACIAN, upper_grids[j], shape)

    if merge < n:
        def on_upper(level, tag, idx, frame):
            (gsinks[level] if tag == "g" else lsinks[level]).append(frame)

        ranges = [(0, upper_grids[j].count) for j in range(n - merge)]
        _run_levels(iter(kept_day_frames), upper_grids[:-1], schedule.strides[merge:],
                    merge + 1, ranges, on_upper, stats)
        for i in range(merge + 1, n + 1):
            gaussian[i] = gsinks[i].finish()
            laplacian[i] = lsinks[i].finish()

    counts = [grids[i].count for i in range(merge)] + [g.count for g in upper_grids]
    missing = [grids[i].missing for i in range(merge)] + [g.missing for g in upper_grids]
    manifest = PyramidManifest(
        schedule=schedule,
        shape=shape,
        origin_ns=source.grid.origin_ns,
        counts=tuple(counts),
        missing=tuple(missing),
        drop_days=plan.drop_days,
    )
    return Pyramid(manifest, gaussian, laplacian, stats)


def _next_range(grids, strides, parent_range, j):
    s = strides[j]
    phase = subsample_phase(s)
    plo, phi = parent_range
    n_parent = grids[j].count
    m = subsampled_count(n_parent, s)
    klo = max(0, _ceil_div(plo - phase, s))
    khi = m if phi >= n_parent else _ceil_div(phi - phase, s)
    return (klo, khi)


def _runs_from_flags(flags: Sequence[bool]) -> tuple[tuple[int, int], ...]:
    runs: list[tuple[int, int]] = []
    start = None
    for i, flag in enumerate(flags):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(flags)))
    return tuple(runs)


def gaussian_support(schedule: LevelSchedule, counts: Sequence[int],
                     level: int, slot: int) -> tuple[int, int]:
    """Inclusive level-0 slot interval influencing one Gaussian frame."""
    lo = hi = slot
    for j in range(level, 0, -1):
        s = schedule.strides[j - 1]
        kern = kernel_for_stride(s)
        phase = subsample_phase(s)
        n_parent = counts[j - 1]
        plo = min(lo * s + phase, n_parent - 1)
        phi = min(hi * s + phase, n_parent - 1)
        lo = max(plo - kern.left, 0)
        hi = min(phi + kern.right, n_parent - 1)
    return lo, hi


def laplacian_support(schedule: LevelSchedule, counts: Sequence[int],
                      level: int, slot: int) -> tuple[int, int]:
    """Inclusive level-0 slot interval influencing one Laplacian frame."""
    s = schedule.strides[level - 1]
    kern = kernel_for_stride(s)
    phase = subsample_phase(s)
    n_parent = counts[level - 1]
    m = counts[level]
    glo = min(max(max(slot - kern.left, 0) // s, 0), m - 1)
    ghi = min(max(min(slot + kern.right, n_parent - 1) // s, 0), m - 1)
    plo = min(slot, max(min(glo * s + phase, n_parent - 1) - kern.left, 0))
    phi = max(slot, min(min(ghi * s + phase, n_parent - 1) + kern.right, n_parent - 1))
    lo, _ = gaussian_support(schedule, counts, level - 1, plo)
    _, hi = gaussian_support(schedule, counts, level - 1, phi)
    return lo, hi
