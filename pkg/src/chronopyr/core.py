"""Domain types, time arithmetic, and level-schedule construction.

Everything here is immutable after construction and safe to share across
worker threads. Time is kept exact: timestamps are integer nanoseconds
since the UTC epoch, and frame periods are rational nanoseconds (a 30 fps
period is 10**9/30 ns, which has no integer representation). No float ever
touches the time axis.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

NS_PER_SECOND = 1_000_000_000
DAY_NS = 86_400 * NS_PER_SECOND
# Years are approximated as 360 days so that yearly timescales factor into
# strides of 2, 3, and 5; see builder.plan_shards for how the 5-6 surplus
# days are dropped.
YEAR_DAYS = 360
YEAR_NS = YEAR_DAYS * DAY_NS

SUPPORTED_STRIDES = (2, 3, 5)


class ChronoError(Exception):
    """Base class for errors raised by this package."""


class ScheduleError(ChronoError):
    """Raised when a level schedule cannot be constructed."""


class StoreError(ChronoError):
    """Raised on pyramid storage read/write failures."""


class FrameKind(str, Enum):
    INPUT = "input"
    GAUSSIAN = "gaussian"
    LAPLACIAN = "laplacian"


@dataclass(frozen=True)
class FrameShape:
    width: int
    height: int
    channels: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"invalid frame shape {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")

    @property
    def samples(self) -> int:
        return self.width * self.height * self.channels

    @property
    def numpy_shape(self) -> tuple[int, int, int]:
        return (self.height, self.width, self.channels)


def _as_period(value) -> Fraction:
    period = Fraction(value)
    if period <= 0:
        raise ValueError(f"period must be positive, got {value}")
    return period


def _normalize_runs(runs: Sequence[Sequence[int]], count: int) -> tuple[tuple[int, int], ...]:
    """Sort, merge, and bounds-check [start, end) runs."""
    cleaned = sorted((int(s), int(e)) for s, e in runs if int(e) > int(s))
    merged: list[tuple[int, int]] = []
    for start, end in cleaned:
        if start < 0 or end > count:
            raise ValueError(f"missing run [{start},{end}) outside [0,{count})")
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return tuple(merged)


@dataclass(frozen=True)
class TimeGrid:
    """A uniform slot grid: slot i sits at origin_ns + i * period_ns.

    `missing` is a run-length list of [start, end) slot ranges with no data.
    """

    origin_ns: int
    period_ns: Fraction
    count: int
    missing: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "period_ns", _as_period(self.period_ns))
        if self.count < 0:
            raise ValueError("count must be >= 0")
        object.__setattr__(self, "missing", _normalize_runs(self.missing, self.count))

    def slot_time(self, i: int) -> int:
        """Absolute time of slot i in integer ns (exact for integral periods)."""
        if not 0 <= i < self.count:
            raise IndexError(f"slot {i} outside [0,{self.count})")
        return self.origin_ns + math.floor(i * self.period_ns)

    def slot_time_exact(self, i: int) -> Fraction:
        return self.origin_ns + i * self.period_ns

    def slot_at(self, t_ns: int) -> int:
        """Nearest slot to an absolute time (may be out of range)."""
        return round(Fraction(t_ns - self.origin_ns) / self.period_ns)

    @property
    def span_ns(self) -> Fraction:
        return self.count * self.period_ns

    def is_missing(self, i: int) -> bool:
        if not self.missing:
            return False
        starts = self._starts()
        j = bisect_right(starts, i) - 1
        return j >= 0 and i < self.missing[j][1]

    def _starts(self) -> list[int]:
        cached = self.__dict__.get("_starts_cache")
        if cached is None:
            cached = [s for s, _ in self.missing]
            self.__dict__["_starts_cache"] = cached
        return cached

    def missing_mask(self) -> np.ndarray:
        mask = np.zeros(self.count, dtype=bool)
        for start, end in self.missing:
            mask[start:end] = True
        return mask

    def missing_slot_count(self) -> int:
        return sum(e - s for s, e in self.missing)

    def with_missing(self, runs: Sequence[Sequence[int]]) -> "TimeGrid":
        return TimeGrid(self.origin_ns, self.period_ns, self.count, tuple((s, e) for s, e in runs))


def slot_to_time(grid: TimeGrid, i: int) -> int:
    """Absolute timestamp of slot i (ns since epoch)."""
    return grid.slot_time(i)


def subsample_phase(stride: int) -> int:
    """Index offset of the first kept frame when subsampling by `stride`.

    Stride 2 keeps index 1 of each pair (the center of mass of its 4-tap
    blur window); odd strides keep the middle of each group.
    """
    if stride == 2:
        return 1
    if stride in (3, 5):
        return (stride - 1) // 2
    raise ValueError(f"unsupported stride: {stride}")


def subsampled_count(count: int, stride: int) -> int:
    """Frame count after subsampling; the tail is covered by a clamped sample."""
    return -(-count // stride) if count else 0


def subsample_positions(count: int, stride: int) -> np.ndarray:
    """Source index sampled by each output slot (tail clamped to count-1)."""
    phase = subsample_phase(stride)
    out = np.arange(subsampled_count(count, stride)) * stride + phase
    return np.minimum(out, count - 1)


def subsample_runs(runs: Sequence[tuple[int, int]], count: int, stride: int) -> tuple[tuple[int, int], ...]:
    """Propagate missing runs: an output slot is missing iff its sampled
    source slot is missing."""
    phase = subsample_phase(stride)
    m = subsampled_count(count, stride)
    out: list[tuple[int, int]] = []
    for start, end in runs:
        lo = max(0, -(-(start - phase) // stride))
        hi = min(m, -(-(end - phase) // stride))
        # Clamped tail slots sample count-1.
        if end == count:
            hi = m
        if hi > lo:
            out.append((lo, hi))
    return _normalize_runs(out, m)


def subsample_grid(grid: TimeGrid, stride: int) -> TimeGrid:
    phase = subsample_phase(stride)
    return TimeGrid(
        origin_ns=grid.origin_ns + math.floor(phase * grid.period_ns),
        period_ns=grid.period_ns * stride,
        count=subsampled_count(grid.count, stride),
        missing=subsample_runs(grid.missing, grid.count, stride),
    )


def _smooth_factors(n: int) -> list[int] | None:
    """Ascending 2/3/5 factorization of n, or None if n has other factors."""
    factors = []
    for p in SUPPORTED_STRIDES:
        while n % p == 0:
            factors.append(p)
            n //= p
    return sorted(factors) if n == 1 else None


def _smallest_other_prime(n: int) -> int:
    for p in SUPPORTED_STRIDES:
        while n % p == 0:
            n //= p
    for cand in range(2, n + 1):
        if n % cand == 0:
            return cand
    return n


def timescale_label(period_ns) -> str:
    """Human-readable timescale name, e.g. '1/30 s', '5 min', '1 day', '1 year'."""
    sec = Fraction(period_ns) / NS_PER_SECOND
    if sec < 1:
        if sec.numerator == 1:
            return f"1/{sec.denominator} s"
        return f"{float(sec):g} s"
    if sec < 60:
        return f"{sec} s" if sec.denominator == 1 else f"{float(sec):g} s"
    if sec < 3600 and sec % 60 == 0:
        return f"{sec // 60} min"
    if sec < 86_400 and sec % 3600 == 0:
        return f"{sec // 3600} h"
    if sec % 86_400 == 0:
        days = sec // 86_400
        if days == 1:
            return "1 day"
        if days % YEAR_DAYS == 0:
            years = days // YEAR_DAYS
            return "1 year" if years == 1 else f"{years} years"
        return f"{days} d"
    return f"{float(sec / 60):g} min"


@dataclass(frozen=True)
class LevelSchedule:
    """Ordered stride list with cumulative periods and timescale labels.

    Level 0 is the input; level i is reached by applying strides[0..i-1].
    `day_level` / `year_level` mark where one frame spans exactly one day /
    one 360-day year, when those periods occur in the cascade.
    """

    base_period_ns: Fraction
    strides: tuple[int, ...]
    labels: tuple[str, ...] = ()
    day_level: int | None = None
    year_level: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "base_period_ns", _as_period(self.base_period_ns))
        object.__setattr__(self, "strides", tuple(int(s) for s in self.strides))
        for s in self.strides:
            if s not in SUPPORTED_STRIDES:
                raise ScheduleError(f"unsupported stride: {s}")
        if not self.labels:
            object.__setattr__(
                self,
                "labels",
                tuple(timescale_label(self.level_period_ns(i)) for i in range(self.levels + 1)),
            )
        if len(self.labels) != self.levels + 1:
            raise ScheduleError("labels must cover levels 0..N")
        if self.day_level is not None and self.level_period_ns(self.day_level) != DAY_NS:
            raise ScheduleError("day_level period is not exactly one day")
        if self.year_level is not None:
            if self.level_period_ns(self.year_level) != YEAR_NS:
                raise ScheduleError("year_level period is not exactly 360 days")
            if any(s != 2 for s in self.strides[self.year_level:]):
                raise ScheduleError("strides above the year level must all be 2")

    @property
    def levels(self) -> int:
        return len(self.strides)

    def cumulative_stride(self, i: int) -> int:
        if not 0 <= i <= self.levels:
            raise IndexError(f"level {i} outside [0,{self.levels}]")
        return math.prod(self.strides[:i])

    def level_period_ns(self, i: int) -> Fraction:
        return self.base_period_ns * self.cumulative_stride(i)

    @classmethod
    def from_strides(cls, base_period_ns, strides: Sequence[int]) -> "LevelSchedule":
        """Build a schedule from an explicit stride list, detecting the day
        and year anchor levels when the cascade passes through them."""
        base = _as_period(base_period_ns)
        day = year = None
        cum = Fraction(1)
        for i, s in enumerate(tuple(strides), start=1):
            cum *= s
            period = base * cum
            if period == DAY_NS:
                day = i
            elif period == YEAR_NS:
                year = i
        if base == DAY_NS:
            day = 0
        return cls(base, tuple(strides), day_level=day, year_level=year)


def level_period(schedule: LevelSchedule, i: int) -> Fraction:
    """Duration of one frame at level i, in (rational) nanoseconds."""
    return schedule.level_period_ns(i)


# Sub-day anchor chain: periods in seconds whose consecutive ratios are the
# canonical stride ordering (pinned; any 2/3/5 ordering with the same
# multiset would also reach one day, but the ordering is part of the
# format contract).
_SUBDAY_ANCHORS_S = (
    Fraction(1, 30), Fraction(1, 15), Fraction(1, 5),
    Fraction(1), Fraction(5), Fraction(15), Fraction(30),
    Fraction(60), Fraction(300), Fraction(900), Fraction(1800),
    Fraction(3600), Fraction(7200), Fraction(14400), Fraction(43200),
    Fraction(86400),
)
# Above one day: 3 d, 6 d, 30 d, 90 d, 180 d, 360 d; then powers of 2.
_ABOVE_DAY_STRIDES = (3, 2, 5, 3, 2, 2)


def _subday_strides(base_s: Fraction) -> list[int]:
    """Stride chain from base_s up to one day, routed through the anchor
    periods so that cumulative periods land on familiar time units."""
    if base_s == Fraction(86_400):
        return []
    strides: list[int] = []
    current = base_s
    for anchor in _SUBDAY_ANCHORS_S:
        if anchor <= current:
            continue
        ratio = anchor / current
        if ratio.denominator != 1:
            continue
        factors = _smooth_factors(ratio.numerator)
        if factors is None:
            continue
        strides.extend(factors)
        current = anchor
        break
    else:
        raise ScheduleError(f"no anchor period reachable from base {base_s} s")
    idx = _SUBDAY_ANCHORS_S.index(current)
    for nxt in _SUBDAY_ANCHORS_S[idx + 1:]:
        ratio = nxt / current
        strides.append(int(ratio))
        current = nxt
    return strides


def schedule_for(base_period_ns, total_span_ns) -> LevelSchedule:
    """Construct the level schedule for a given base period and span.

    The cascade passes exactly through one day (for spans of a day or more)
    and through the 360-day year (for spans of a year or more); strides
    above the year are all 2. Levels are emitted while they would hold at
    least 2 frames, or while their period still fits inside the span (so a
    span of exactly one year keeps its single-frame year level).
    """
    base = _as_period(base_period_ns)
    span = Fraction(total_span_ns)
    if span < base:
        raise ScheduleError("total span is shorter than one frame period")
    base_s = base / NS_PER_SECOND
    ratio = Fraction(86_400) / base_s
    if ratio.denominator != 1:
        raise ScheduleError(
            f"base period does not divide one day: offending factor {_smallest_other_prime(ratio.denominator)}"
        )
    if _smooth_factors(ratio.numerator) is None:
        raise ScheduleError(
            f"day/base ratio is not 2-3-5-smooth: offending factor {_smallest_other_prime(ratio.numerator)}"
        )

    def candidates() -> Iterator[int]:
        yield from _subday_strides(base_s)
        yield from _ABOVE_DAY_STRIDES
        while True:
            yield 2

    strides: list[int] = []
    count = span // base
    period = base
    for s in candidates():
        nxt_count = subsampled_count(int(count), s)
        nxt_period = period * s
        if nxt_count < 2 and nxt_period > span:
            break
        strides.append(s)
        count, period = nxt_count, nxt_period
    return LevelSchedule.from_strides(base, strides)


class FrameSequence:
    """A uniformly sampled series of equal-shape frames.

    Frames are float32 arrays of shape (height, width, channels); Gaussian
    and input values live in [0, 255], Laplacian values in [-255, 255].
    Missing slots read as the all-black frame for input/Gaussian kinds.
    """

    def __init__(self, grid: TimeGrid, shape: FrameShape, kind: FrameKind):
        self.grid = grid
        self.shape = shape
        self.kind = kind
        self._zero = np.zeros(shape.numpy_shape, dtype=np.float32)
        self._zero.setflags(write=False)

    def _fetch(self, i: int) -> np.ndarray:
        raise NotImplementedError

    def frame(self, i: int) -> np.ndarray:
        if not 0 <= i < self.grid.count:
            raise IndexError(f"frame {i} outside [0,{self.grid.count})")
        if self.kind is not FrameKind.LAPLACIAN and self.grid.is_missing(i):
            return self._zero
        return self._fetch(i)

    def iter_frames(self) -> Iterator[np.ndarray]:
        for i in range(self.grid.count):
            yield self.frame(i)

    def __len__(self) -> int:
        return self.grid.count

    def to_array(self) -> np.ndarray:
        out = np.empty((self.grid.count, *self.shape.numpy_shape), dtype=np.float32)
        for i, f in enumerate(self.iter_frames()):
            out[i] = f
        return out


class ArraySequence(FrameSequence):
    """In-memory frame sequence backed by one (n, h, w, c) float32 array."""

    def __init__(self, grid: TimeGrid, data: np.ndarray, kind: FrameKind = FrameKind.INPUT):
        data = np.asarray(data, dtype=np.float32)
        if data.ndim == 3:
            data = data[..., np.newaxis]
        if data.ndim != 4 or data.shape[0] != grid.count:
            raise ValueError(f"data shape {data.shape} does not match grid count {grid.count}")
        shape = FrameShape(width=data.shape[2], height=data.shape[1], channels=data.shape[3])
        super().__init__(grid, shape, kind)
        self.data = data

    def _fetch(self, i: int) -> np.ndarray:
        return self.data[i]


class FuncSequence(FrameSequence):
    """Lazy frame sequence computing frames on demand from a callable."""

    def __init__(self, grid: TimeGrid, shape: FrameShape, kind: FrameKind,
                 fn: Callable[[int], np.ndarray]):
        super().__init__(grid, shape, kind)
        self._fn = fn

    def _fetch(self, i: int) -> np.ndarray:
        return np.asarray(self._fn(i), dtype=np.float32).reshape(self.shape.numpy_shape)


@dataclass(frozen=True)
class PyramidManifest:
    """Format metadata for a stored pyramid: schedule, shape, per-level
    counts and missing runs, value encodings, and content checksums."""

    schedule: LevelSchedule
    shape: FrameShape
    origin_ns: int
    counts: tuple[int, ...]
    missing: tuple[tuple[tuple[int, int], ...], ...]
    drop_days: tuple[str, ...] = ()
    laplacian_encoding: str = "f32"
    chunk_size: int = 1024
    checksums: dict | None = None

    def __post_init__(self):
        n = self.schedule.levels
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        object.__setattr__(
            self, "missing",
            tuple(tuple((int(s), int(e)) for s, e in runs) for runs in self.missing),
        )
        if len(self.counts) != n + 1 or len(self.missing) != n + 1:
            raise ValueError("counts/missing must cover levels 0..N")
        if self.laplacian_encoding not in ("f32", "i16"):
            raise ValueError(f"unknown laplacian encoding {self.laplacian_encoding!r}")
        for i, s in enumerate(self.schedule.strides):
            expected = subsampled_count(self.counts[i], s)
            crosses_drop = self.drop_days and self.schedule.day_level == i + 1
            if self.counts[i + 1] != expected and not crosses_drop:
                raise ValueError(
                    f"level {i + 1} count {self.counts[i + 1]} != ceil({self.counts[i]}/{s})"
                )

    @property
    def levels(self) -> int:
        return self.schedule.levels

    def level_origin_ns(self, level: int) -> int:
        origin = Fraction(self.origin_ns)
        period = self.schedule.base_period_ns
        for s in self.schedule.strides[:level]:
            origin += subsample_phase(s) * period
            period *= s
        return math.floor(origin)

    def grid(self, level: int) -> TimeGrid:
        """TimeGrid of the Gaussian video at `level` (0 = input)."""
        return TimeGrid(
            origin_ns=self.level_origin_ns(level),
            period_ns=self.schedule.level_period_ns(level),
            count=self.counts[level],
            missing=self.missing[level],
        )

    def laplacian_grid(self, level: int) -> TimeGrid:
        """The Laplacian at `level` runs at the rate of level-1's Gaussian."""
        if not 1 <= level <= self.levels:
            raise IndexError(f"laplacian level {level} outside [1,{self.levels}]")
        return self.grid(level - 1)
