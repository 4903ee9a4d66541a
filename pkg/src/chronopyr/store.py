"""Frame ingestion, the chunked on-disk pyramid layout, and export.

Layout under a pyramid root:

    manifest.json
    G/<level>/chunk_0000.raw ...   Gaussian levels 0..N, unsigned 8-bit
    L/<level>/chunk_0000.raw ...   Laplacian levels 1..N, little-endian
                                   float32 (or int16 with --lap-encoding i16)

Chunks are headerless planar frame data in slot order, so shard merges are
plain byte concatenation. The manifest carries per-level counts, missing
runs, and xxh64 checksums over each level's chunk bytes.
"""

from __future__ import annotations

import json
import logging
import math
import os
import re
import shlex
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Iterator

import numpy as np
import xxhash
from PIL import Image

from . import builder as _builder
from .core import (
    FrameKind,
    FrameSequence,
    FrameShape,
    FuncSequence,
    LevelSchedule,
    PyramidManifest,
    StoreError,
    TimeGrid,
    subsample_grid,
)
from .builder import Pyramid, ShardPlan, level_grids
from .spectrogram import render_laplacian

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
CHUNK_PATTERN = "chunk_{:04d}.raw"
SCHEMA_VERSION = 1

ENCODER_ENV = "CHRONOPYR_ENCODER"
DEFAULT_ENCODER = (
    "ffmpeg -y -loglevel error -f rawvideo -pix_fmt {pix_fmt} -s {width}x{height} "
    "-r {fps} -i - -pix_fmt yuv420p {out}"
)


@dataclass(frozen=True)
class ChunkLayout:
    frames_per_chunk: int = 1024
    laplacian_encoding: str = "f32"

    def __post_init__(self):
        if self.frames_per_chunk < 1:
            raise ValueError("frames_per_chunk must be >= 1")
        if self.laplacian_encoding not in ("f32", "i16"):
            raise ValueError(f"unknown laplacian encoding {self.laplacian_encoding!r}")


def bytes_per_sample(kind: FrameKind, encoding: str) -> int:
    if kind is not FrameKind.LAPLACIAN:
        return 1
    return 4 if encoding == "f32" else 2


def encode_frame(frame: np.ndarray, kind: FrameKind, encoding: str) -> bytes:
    if kind is not FrameKind.LAPLACIAN:
        return np.clip(np.rint(frame), 0, 255).astype(np.uint8).tobytes()
    if encoding == "f32":
        return np.asarray(frame, dtype="<f4").tobytes()
    return np.clip(np.rint(frame), -32768, 32767).astype("<i2").tobytes()


def decode_frames(raw: bytes, shape: FrameShape, kind: FrameKind, encoding: str) -> np.ndarray:
    if kind is not FrameKind.LAPLACIAN:
        data = np.frombuffer(raw, dtype=np.uint8)
    elif encoding == "f32":
        data = np.frombuffer(raw, dtype="<f4")
    else:
        data = np.frombuffer(raw, dtype="<i2")
    frames = data.reshape(-1, *shape.numpy_shape).astype(np.float32)
    return frames


def _kind_dir(kind: FrameKind) -> str:
    return "L" if kind is FrameKind.LAPLACIAN else "G"


def chunk_path(root: Path, kind: FrameKind, level: int, chunk: int) -> Path:
    return Path(root) / _kind_dir(kind) / str(level) / CHUNK_PATTERN.format(chunk)


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class ChunkSink:
    """Writes appended frames into numbered chunk files, hashing as it goes."""

    def __init__(self, grid: TimeGrid, shape: FrameShape, kind: FrameKind, *,
                 directory: Path, encoding: str, frames_per_chunk: int):
        self.grid = grid
        self.shape = shape
        self.kind = kind
        self.directory = Path(directory)
        self.encoding = encoding
        self.frames_per_chunk = frames_per_chunk
        self._buffer: list[bytes] = []
        self._chunk_index = 0
        self._appended = 0
        self._hash = xxhash.xxh64()

    def append(self, frame: np.ndarray) -> None:
        raw = encode_frame(frame, self.kind, self.encoding)
        self._hash.update(raw)
        self._buffer.append(raw)
        self._appended += 1
        if len(self._buffer) == self.frames_per_chunk:
            self._flush()

    def _flush(self) -> None:
        if not self._buffer:
            return
        path = self.directory / CHUNK_PATTERN.format(self._chunk_index)
        _atomic_write(path, b"".join(self._buffer))
        self._buffer = []
        self._chunk_index += 1

    @property
    def checksum(self) -> str:
        return self._hash.hexdigest()

    def finish(self) -> "ChunkSequence":
        self._flush()
        if self._appended != self.grid.count:
            raise StoreError(
                f"wrote {self._appended} frames for a grid of {self.grid.count}"
            )
        return ChunkSequence(self.grid, self.shape, self.kind,
                             directory=self.directory, encoding=self.encoding,
                             frames_per_chunk=self.frames_per_chunk)


class ChunkSequence(FrameSequence):
    """Random access and streaming over one level's chunk files."""

    def __init__(self, grid: TimeGrid, shape: FrameShape, kind: FrameKind, *,
                 directory: Path, encoding: str, frames_per_chunk: int):
        super().__init__(grid, shape, kind)
        self.directory = Path(directory)
        self.encoding = encoding
        self.frames_per_chunk = frames_per_chunk
        self.frame_bytes = shape.samples * bytes_per_sample(kind, encoding)

    def _chunk_file(self, chunk: int) -> Path:
        return self.directory / CHUNK_PATTERN.format(chunk)

    def _chunk_frames(self, chunk: int) -> int:
        start = chunk * self.frames_per_chunk
        return min(self.frames_per_chunk, self.grid.count - start)

    def _read_chunk(self, chunk: int) -> bytes:
        path = self._chunk_file(chunk)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            rel = path.relative_to(self.directory.parent.parent)
            raise StoreError(f"missing chunk {rel}") from None
        expected = self._chunk_frames(chunk) * self.frame_bytes
        if len(raw) != expected:
            lo = chunk * self.frames_per_chunk
            hi = lo + self._chunk_frames(chunk)
            raise StoreError(
                f"corrupt chunk {path.name}: level {self.directory.name} slots "
                f"[{lo},{hi}) expect {expected} bytes, found {len(raw)}"
            )
        return raw

    def _fetch(self, i: int) -> np.ndarray:
        chunk, offset = divmod(i, self.frames_per_chunk)
        path = self._chunk_file(chunk)
        try:
            with open(path, "rb") as fh:
                fh.seek(offset * self.frame_bytes)
                raw = fh.read(self.frame_bytes)
        except FileNotFoundError:
            rel = path.relative_to(self.directory.parent.parent)
            raise StoreError(f"missing chunk {rel}") from None
        if len(raw) != self.frame_bytes:
            raise StoreError(f"corrupt chunk {path.name}: short read at slot {i}")
        return decode_frames(raw, self.shape, self.kind, self.encoding)[0]

    def iter_frames(self) -> Iterator[np.ndarray]:
        chunks = -(-self.grid.count // self.frames_per_chunk) if self.grid.count else 0
        slot = 0
        for c in range(chunks):
            frames = decode_frames(self._read_chunk(c), self.shape, self.kind, self.encoding)
            for frame in frames:
                if self.kind is not FrameKind.LAPLACIAN and self.grid.is_missing(slot):
                    yield self._zero
                else:
                    yield frame
                slot += 1

    def checksum(self) -> str:
        h = xxhash.xxh64()
        chunks = -(-self.grid.count // self.frames_per_chunk) if self.grid.count else 0
        for c in range(chunks):
            h.update(self._read_chunk(c))
        return h.hexdigest()


def _period_json(period) -> int | list[int]:
    period = Fraction(period)
    return int(period) if period.denominator == 1 else [period.numerator, period.denominator]


def _period_from_json(value) -> Fraction:
    if isinstance(value, list):
        return Fraction(value[0], value[1])
    return Fraction(value)


def manifest_to_dict(manifest: PyramidManifest) -> dict:
    sched = manifest.schedule
    return {
        "schema_version": SCHEMA_VERSION,
        "base_period_ns": _period_json(sched.base_period_ns),
        "origin_ns": manifest.origin_ns,
        "width": manifest.shape.width,
        "height": manifest.shape.height,
        "channels": manifest.shape.channels,
        "strides": list(sched.strides),
        "labels": list(sched.labels),
        "day_level": sched.day_level,
        "year_level": sched.year_level,
        "counts": list(manifest.counts),
        "missing": [[list(run) for run in runs] for runs in manifest.missing],
        "drop_days": list(manifest.drop_days),
        "laplacian_encoding": manifest.laplacian_encoding,
        "chunk_size": manifest.chunk_size,
        "checksums": manifest.checksums,
    }


def manifest_from_dict(doc: dict) -> PyramidManifest:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise StoreError(f"unsupported manifest schema {doc.get('schema_version')!r}")
    schedule = LevelSchedule(
        base_period_ns=_period_from_json(doc["base_period_ns"]),
        strides=tuple(doc["strides"]),
        labels=tuple(doc["labels"]),
        day_level=doc.get("day_level"),
        year_level=doc.get("year_level"),
    )
    return PyramidManifest(
        schedule=schedule,
        shape=FrameShape(doc["width"], doc["height"], doc["channels"]),
        origin_ns=doc["origin_ns"],
        counts=tuple(doc["counts"]),
        missing=tuple(tuple((s, e) for s, e in runs) for runs in doc["missing"]),
        drop_days=tuple(doc.get("drop_days", ())),
        laplacian_encoding=doc["laplacian_encoding"],
        chunk_size=doc["chunk_size"],
        checksums=doc.get("checksums"),
    )


def write_manifest(manifest: PyramidManifest, root: Path) -> None:
    payload = json.dumps(manifest_to_dict(manifest), indent=1).encode("utf-8")
    _atomic_write(Path(root) / MANIFEST_NAME, payload)


def read_manifest(root: Path) -> PyramidManifest:
    path = Path(root) / MANIFEST_NAME
    if not path.is_file():
        raise StoreError(f"no pyramid manifest at {path}")
    return manifest_from_dict(json.loads(path.read_text("utf-8")))


def level_nbytes(manifest: PyramidManifest, kind: FrameKind, level: int) -> int:
    count = manifest.counts[level if kind is not FrameKind.LAPLACIAN else level - 1]
    return count * manifest.shape.samples * bytes_per_sample(kind, manifest.laplacian_encoding)


def predicted_bytes(manifest: PyramidManifest) -> dict:
    """Byte totals the manifest implies on disk, keyed by (kind, level)."""
    out = {}
    for level in range(manifest.levels + 1):
        out[("G", level)] = level_nbytes(manifest, FrameKind.GAUSSIAN, level)
    for level in range(1, manifest.levels + 1):
        out[("L", level)] = level_nbytes(manifest, FrameKind.LAPLACIAN, level)
    return out


def on_disk_bytes(root: Path, manifest: PyramidManifest) -> dict:
    out = {}
    for (kind_name, level) in predicted_bytes(manifest):
        directory = Path(root) / kind_name / str(level)
        total = sum(p.stat().st_size for p in directory.glob("chunk_*.raw")) if directory.is_dir() else 0
        out[(kind_name, level)] = total
    return out


def _level_sequence(root: Path, manifest: PyramidManifest, kind: FrameKind, level: int) -> ChunkSequence:
    grid = manifest.grid(level) if kind is not FrameKind.LAPLACIAN else manifest.laplacian_grid(level)
    return ChunkSequence(
        grid, manifest.shape, kind,
        directory=Path(root) / _kind_dir(kind) / str(level),
        encoding=manifest.laplacian_encoding,
        frames_per_chunk=manifest.chunk_size,
    )


def write_pyramid(pyramid: Pyramid, root: Path, layout: ChunkLayout = ChunkLayout()) -> PyramidManifest:
    """Write all retained levels and the manifest; returns the manifest with
    freshly computed checksums."""
    root = Path(root)
    checksums: dict = {"G": [], "L": [None]}
    manifest = replace(pyramid.manifest, laplacian_encoding=layout.laplacian_encoding,
                       chunk_size=layout.frames_per_chunk)
    for level in range(manifest.levels + 1):
        seq = pyramid.gaussian_level(level)
        sink = ChunkSink(seq.grid, manifest.shape, FrameKind.GAUSSIAN,
                         directory=root / "G" / str(level),
                         encoding=layout.laplacian_encoding,
                         frames_per_chunk=layout.frames_per_chunk)
        sink.directory.mkdir(parents=True, exist_ok=True)
        for frame in seq.iter_frames():
            sink.append(frame)
        sink.finish()
        checksums["G"].append(sink.checksum)
    for level in range(1, manifest.levels + 1):
        seq = pyramid.laplacian_level(level)
        sink = ChunkSink(seq.grid, manifest.shape, FrameKind.LAPLACIAN,
                         directory=root / "L" / str(level),
                         encoding=layout.laplacian_encoding,
                         frames_per_chunk=layout.frames_per_chunk)
        sink.directory.mkdir(parents=True, exist_ok=True)
        for frame in seq.iter_frames():
            sink.append(frame)
        sink.finish()
        checksums["L"].append(sink.checksum)
    manifest = replace(manifest, checksums=checksums)
    write_manifest(manifest, root)
    return manifest


def verify_checksums(root: Path, manifest: PyramidManifest) -> None:
    if not manifest.checksums:
        return
    for level in range(manifest.levels + 1):
        seq = _level_sequence(root, manifest, FrameKind.GAUSSIAN, level)
        actual = seq.checksum()
        expected = manifest.checksums["G"][level]
        if expected is not None and actual != expected:
            raise StoreError(f"checksum mismatch in G/{level}: {actual} != {expected}")
    for level in range(1, manifest.levels + 1):
        seq = _level_sequence(root, manifest, FrameKind.LAPLACIAN, level)
        actual = seq.checksum()
        expected = manifest.checksums["L"][level]
        if expected is not None and actual != expected:
            raise StoreError(f"checksum mismatch in L/{level}: {actual} != {expected}")


def read_pyramid(root: Path, *, verify: bool = True) -> Pyramid:
    """Open a stored pyramid with lazily-read chunk sequences."""
    root = Path(root)
    manifest = read_manifest(root)
    if verify:
        verify_checksums(root, manifest)
    gaussian: list[FrameSequence | None] = []
    for level in range(manifest.levels + 1):
        kind = FrameKind.INPUT if level == 0 else FrameKind.GAUSSIAN
        seq = _level_sequence(root, manifest, FrameKind.GAUSSIAN, level)
        seq.kind = kind
        gaussian.append(seq)
    laplacian: list[FrameSequence | None] = [None]
    for level in range(1, manifest.levels + 1):
        laplacian.append(_level_sequence(root, manifest, FrameKind.LAPLACIAN, level))
    return Pyramid(manifest, gaussian, laplacian)


def write_level0_store(seq: FrameSequence, root: Path,
                       layout: ChunkLayout = ChunkLayout()) -> PyramidManifest:
    """Persist an ingested level-0 sequence as a pyramid root with no
    levels; `build` extends it in place."""
    schedule = LevelSchedule.from_strides(seq.grid.period_ns, ())
    manifest = PyramidManifest(
        schedule=schedule,
        shape=seq.shape,
        origin_ns=seq.grid.origin_ns,
        counts=(seq.grid.count,),
        missing=(seq.grid.missing,),
        laplacian_encoding=layout.laplacian_encoding,
        chunk_size=layout.frames_per_chunk,
    )
    sink = ChunkSink(seq.grid, seq.shape, FrameKind.GAUSSIAN,
                     directory=Path(root) / "G" / "0",
                     encoding=layout.laplacian_encoding,
                     frames_per_chunk=layout.frames_per_chunk)
    sink.directory.mkdir(parents=True, exist_ok=True)
    for frame in seq.iter_frames():
        sink.append(frame)
    sink.finish()
    manifest = replace(manifest, checksums={"G": [sink.checksum], "L": [None]})
    write_manifest(manifest, root)
    return manifest


# --- ingestion ---------------------------------------------------------------

_TOKEN_RES = {
    "YYYY": r"(\d{4})",
    "mmm": r"(\d{3})",
    "MM": r"(\d{2})",
    "DD": r"(\d{2})",
    "HH": r"(\d{2})",
    "SS": r"(\d{2})",
}
_TOKEN_ORDER = ("YYYY", "mmm", "MM", "DD", "HH", "SS")


class IngestError(StoreError):
    pass


@dataclass(frozen=True)
class IngestSpec:
    """Where level-0 frames come from and how they snap onto the grid."""

    source: str
    kind: str = "image-directory"           # image-directory | raw-stream | manifest-list
    pattern: str | None = None              # filename timestamp tokens, e.g. YYYYMMDD_HHMM
    period_ns: Fraction = Fraction(0)
    snap_tolerance: float = 0.5
    shape: FrameShape | None = None
    grayscale: bool = False
    origin_ns: int | None = None            # raw-stream only

    def __post_init__(self):
        if not 0 < self.snap_tolerance <= 0.5:
            raise ValueError("snap tolerance must be in (0, 0.5]")


def _pattern_regex(pattern: str) -> tuple[re.Pattern, list[str]]:
    fields: list[str] = []
    out = []
    i = 0
    mm_seen = 0
    while i < len(pattern):
        for token in _TOKEN_ORDER:
            if pattern.startswith(token, i):
                if token == "MM":
                    mm_seen += 1
                    if mm_seen > 2:
                        raise IngestError(f"ambiguous timestamp pattern {pattern!r}: too many MM tokens")
                    fields.append("month" if mm_seen == 1 else "minute")
                else:
                    fields.append({"YYYY": "year", "DD": "day", "HH": "hour",
                                   "SS": "second", "mmm": "millisecond"}[token])
                out.append(_TOKEN_RES[token])
                i += len(token)
                break
        else:
            out.append(re.escape(pattern[i]))
            i += 1
    for required in ("year", "month", "day"):
        if required not in fields:
            raise IngestError(f"timestamp pattern {pattern!r} lacks a {required} token")
    if fields.count("minute") and "hour" not in fields:
        raise IngestError(f"ambiguous timestamp pattern {pattern!r}: minutes without hours")
    return re.compile("".join(out)), fields


def _parse_name_timestamp(name: str, regex: re.Pattern, fields: list[str]) -> int | None:
    m = regex.search(name)
    if not m:
        return None
    parts = dict(zip(fields, (int(g) for g in m.groups())))
    try:
        dt = datetime(
            parts["year"], parts["month"], parts["day"],
            parts.get("hour", 0), parts.get("minute", 0), parts.get("second", 0),
            tzinfo=timezone.utc,
        )
    except ValueError as exc:
        raise IngestError(f"bad timestamp in {name!r}: {exc}") from exc
    return int(dt.timestamp()) * 1_000_000_000 + parts.get("millisecond", 0) * 1_000_000


def _decode_image(path: Path, spec: IngestSpec) -> np.ndarray:
    with Image.open(path) as img:
        if spec.grayscale:
            if img.mode != "L":
                rgb = np.asarray(img.convert("RGB"), dtype=np.float32)
                data = rgb[..., 0] * 0.299 + rgb[..., 1] * 0.587 + rgb[..., 2] * 0.114
            else:
                data = np.asarray(img, dtype=np.float32)
            data = data[..., np.newaxis]
        else:
            data = np.asarray(img.convert("RGB"), dtype=np.float32)
    if spec.shape is not None and data.shape[:2] != (spec.shape.height, spec.shape.width):
        logger.info("resizing %s from %sx%s to %sx%s", path.name,
                    data.shape[1], data.shape[0], spec.shape.width, spec.shape.height)
        mode = "L" if data.shape[-1] == 1 else "RGB"
        img = Image.fromarray(np.clip(np.rint(data), 0, 255).astype(np.uint8).squeeze(), mode)
        img = img.resize((spec.shape.width, spec.shape.height), Image.NEAREST)
        data = np.asarray(img, dtype=np.float32)
        if data.ndim == 2:
            data = data[..., np.newaxis]
    return data


def _timestamped_files(spec: IngestSpec) -> list[tuple[int, Path]]:
    if spec.kind == "image-directory":
        src = Path(spec.source)
        if not src.is_dir():
            raise IngestError(f"unreadable source directory {src}")
        if not spec.pattern:
            raise IngestError("image-directory ingest needs a filename timestamp pattern")
        regex, fields = _pattern_regex(spec.pattern)
        stamped = []
        for path in sorted(src.iterdir()):
            if path.suffix.lower() not in (".png", ".jpg", ".jpeg", ".bmp"):
                continue
            ts = _parse_name_timestamp(path.name, regex, fields)
            if ts is None:
                logger.warning("skipping %s: no timestamp match", path.name)
                continue
            stamped.append((ts, path))
        return stamped
    if spec.kind == "manifest-list":
        src = Path(spec.source)
        if not src.is_file():
            raise IngestError(f"unreadable manifest list {src}")
        stamped = []
        for line in src.read_text("utf-8").splitlines():
            if not line.strip():
                continue
            path_str, _, ts_str = line.partition("\t")
            if not ts_str:
                raise IngestError(f"bad manifest line {line!r}: want path<TAB>timestamp")
            try:
                ts = int(ts_str)
            except ValueError:
                ts = int(datetime.fromisoformat(ts_str).replace(tzinfo=timezone.utc).timestamp() * 1e9)
            stamped.append((ts, Path(path_str)))
        return stamped
    raise IngestError(f"unknown ingest source kind {spec.kind!r}")


def ingest(spec: IngestSpec) -> FrameSequence:
    """Snap source frames onto a uniform grid.

    Slots align to the UTC epoch lattice of the nominal period, so day
    boundaries fall on slot boundaries whenever the period divides a day.
    Frames snap to the nearest slot within the tolerance; unmatched slots
    become missing runs; duplicate snaps keep the earliest frame.
    """
    period = Fraction(spec.period_ns)
    if period <= 0:
        raise IngestError("ingest needs a positive nominal period")

    if spec.kind == "raw-stream":
        return _ingest_raw(spec)

    stamped = _timestamped_files(spec)
    if not stamped:
        raise IngestError(f"no usable frames in {spec.source}")
    tolerance = spec.snap_tolerance * period
    by_slot: dict[int, tuple[int, Path]] = {}
    for ts, path in sorted(stamped):
        slot = round(Fraction(ts) / period)
        offset = abs(Fraction(ts) - slot * period)
        if offset > tolerance:
            logger.warning("skipping %s: %.3fs from nearest slot", path.name,
                           float(offset) / 1e9)
            continue
        if slot in by_slot:
            logger.info("duplicate snap at slot %d: keeping %s, dropping %s",
                        slot, by_slot[slot][1].name, path.name)
            continue
        by_slot[slot] = (ts, path)
    if not by_slot:
        raise IngestError(f"no frames within snap tolerance in {spec.source}")

    first = min(by_slot)
    last = max(by_slot)
    count = last - first + 1
    origin_ns = math.floor(first * period)
    slot_paths: dict[int, Path] = {slot - first: p for slot, (_, p) in by_slot.items()}
    flags = [i not in slot_paths for i in range(count)]
    grid = TimeGrid(origin_ns, period, count, _builder._runs_from_flags(flags))

    first_frame = _decode_image(slot_paths[min(slot_paths)], spec)
    shape = spec.shape or FrameShape(first_frame.shape[1], first_frame.shape[0], first_frame.shape[2])
    eff_spec = replace(spec, shape=shape)

    def fetch(i: int) -> np.ndarray:
        return _decode_image(slot_paths[i], eff_spec)

    return FuncSequence(grid, shape, FrameKind.INPUT, fetch)


def _ingest_raw(spec: IngestSpec) -> FrameSequence:
    if spec.shape is None:
        raise IngestError("raw-stream ingest needs an explicit frame shape")
    src = Path(spec.source)
    if not src.is_file():
        raise IngestError(f"unreadable raw stream {src}")
    frame_bytes = spec.shape.samples
    size = src.stat().st_size
    if size == 0 or size % frame_bytes:
        raise IngestError(f"raw stream size {size} is not a multiple of {frame_bytes}")
    count = size // frame_bytes
    grid = TimeGrid(spec.origin_ns or 0, Fraction(spec.period_ns), count)
    shape = spec.shape

    def fetch(i: int) -> np.ndarray:
        with open(src, "rb") as fh:
            fh.seek(i * frame_bytes)
            raw = fh.read(frame_bytes)
        return np.frombuffer(raw, dtype=np.uint8).reshape(shape.numpy_shape).astype(np.float32)

    return FuncSequence(grid, shape, FrameKind.INPUT, fetch)


# --- export ------------------------------------------------------------------

def frame_to_uint8(frame: np.ndarray, kind: FrameKind) -> np.ndarray:
    if kind is FrameKind.LAPLACIAN:
        return render_laplacian(frame)
    return np.clip(np.rint(frame), 0, 255).astype(np.uint8)


def encoder_template() -> str:
    return os.environ.get(ENCODER_ENV, DEFAULT_ENCODER)


def export_video(seq: FrameSequence, fps: float, path: Path, *,
                 template: str | None = None) -> None:
    """Pipe raw frames into the external encoder named by the command
    template (override with the CHRONOPYR_ENCODER environment variable)."""
    if len(seq) == 0:
        raise StoreError("cannot export an empty sequence")
    template = template or encoder_template()
    pix_fmt = "gray" if seq.shape.channels == 1 else "rgb24"
    cmdline = template.format(width=seq.shape.width, height=seq.shape.height,
                              fps=fps, pix_fmt=pix_fmt, out=str(path))
    argv = shlex.split(cmdline)
    try:
        proc = subprocess.Popen(argv, stdin=subprocess.PIPE)
    except FileNotFoundError:
        raise StoreError(
            f"video encoder not found; attempted: {cmdline} "
            f"(set {ENCODER_ENV} to override)"
        ) from None
    assert proc.stdin is not None
    try:
        for frame in seq.iter_frames():
            proc.stdin.write(frame_to_uint8(frame, seq.kind).tobytes())
        proc.stdin.close()
        code = proc.wait()
    except BrokenPipeError:
        code = proc.wait()
    if code != 0:
        raise StoreError(f"encoder exited with status {code}: {cmdline}")


def export_thumbnail(frame: np.ndarray, kind: FrameKind, max_edge: int = 256) -> Image.Image:
    """Downscale one frame to fit within max_edge, preserving aspect."""
    data = frame_to_uint8(frame, kind)
    if data.shape[-1] == 1:
        img = Image.fromarray(data[..., 0], "L")
    else:
        img = Image.fromarray(data, "RGB")
    w, h = img.size
    scale = max_edge / max(w, h)
    if scale < 1:
        img = img.resize((max(1, round(w * scale)), max(1, round(h * scale))), Image.LANCZOS)
    return img


def build_store(source: FrameSequence, schedule: LevelSchedule, root: Path,
                layout: ChunkLayout = ChunkLayout()) -> PyramidManifest:
    """Single-pass monolithic build writing chunk files as levels stream."""
    from .builder import build_pyramid

    root = Path(root)
    sinks: dict = {}

    def factory(level: int, kind: FrameKind, grid: TimeGrid, shape: FrameShape):
        sink = ChunkSink(grid, shape, kind,
                         directory=root / _kind_dir(kind) / str(level),
                         encoding=layout.laplacian_encoding,
                         frames_per_chunk=layout.frames_per_chunk)
        sink.directory.mkdir(parents=True, exist_ok=True)
        sinks[(kind, level)] = sink
        return sink

    pyramid = build_pyramid(source, schedule, sink_factory=factory)

    in_sink = ChunkSink(source.grid, source.shape, FrameKind.GAUSSIAN,
                        directory=root / "G" / "0",
                        encoding=layout.laplacian_encoding,
                        frames_per_chunk=layout.frames_per_chunk)
    in_sink.directory.mkdir(parents=True, exist_ok=True)
    for frame in source.iter_frames():
        in_sink.append(frame)
    in_sink.finish()

    n = schedule.levels
    checksums = {
        "G": [in_sink.checksum] + [sinks[(FrameKind.GAUSSIAN, i)].checksum for i in range(1, n + 1)],
        "L": [None] + [sinks[(FrameKind.LAPLACIAN, i)].checksum for i in range(1, n + 1)],
    }
    manifest = replace(pyramid.manifest, laplacian_encoding=layout.laplacian_encoding,
                       chunk_size=layout.frames_per_chunk, checksums=checksums)
    write_manifest(manifest, root)
    return manifest


# --- sharded on-disk build ----------------------------------------------------

def build_sharded_store(source: FrameSequence, schedule: LevelSchedule, plan: ShardPlan,
                        root: Path, layout: ChunkLayout = ChunkLayout(),
                        workers: int = 1) -> PyramidManifest:
    """Disk-backed shard build: each day shard writes its own directory
    under shards/<date>/ (skipped when already complete, so a failed run
    resumes per day), then shard chunks merge by concatenation into the
    final layout and the levels above one day build from the stitched
    day-rate video.
    """
    from concurrent.futures import ThreadPoolExecutor

    root = Path(root)
    merge = plan.merge_level
    grids = level_grids(source.grid, schedule)
    shape = source.shape
    shards_dir = root / "shards"

    def shard_dir(shard) -> Path:
        return shards_dir / shard.date

    def run_shard(shard) -> None:
        sdir = shard_dir(shard)
        if (sdir / "done").exists():
            return
        ranges = _builder._shard_ranges(grids, schedule.strides, shard.start_slot,
                                        shard.end_slot, merge)
        sinks: dict = {}
        for j in range(merge):
            level = j + 1
            out_range = _builder._next_range(grids, schedule.strides, ranges[j], j)
            glo, ghi = out_range
            g_grid = TimeGrid(0, 1, ghi - glo)
            l_grid = TimeGrid(0, 1, ranges[j][1] - ranges[j][0])
            for tag, grid_ in (("g", g_grid), ("l", l_grid)):
                kind = FrameKind.GAUSSIAN if tag == "g" else FrameKind.LAPLACIAN
                sink = ChunkSink(grid_, shape, kind,
                                 directory=sdir / tag.upper() / str(level),
                                 encoding=layout.laplacian_encoding,
                                 frames_per_chunk=layout.frames_per_chunk)
                sink.directory.mkdir(parents=True, exist_ok=True)
                sinks[(tag, level)] = sink

        def on_output(level, tag, idx, frame):
            sinks[(tag, level)].append(frame)

        try:
            _builder._run_levels(_builder._slice_iter(source, shard.start_slot, shard.end_slot),
                                 [grids[j] for j in range(merge)],
                                 schedule.strides[:merge], 1, ranges, on_output, {})
        except Exception as exc:
            raise _builder.ShardError(f"shard for {shard.date} failed: {exc}") from exc
        for sink in sinks.values():
            sink.finish()
        (sdir / "done").write_text("ok\n")

    if workers <= 1:
        for shard in plan.shards:
            run_shard(shard)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for fut in [pool.submit(run_shard, s) for s in plan.shards]:
                fut.result()

    # Merge shard chunks into the final layout by byte concatenation.
    day_grid = grids[merge]
    drop = set(plan.drop_days)
    kept_flags: list[bool] = []
    post_missing: list[bool] = []
    checksums: dict = {"G": [None] * (schedule.levels + 1), "L": [None] * (schedule.levels + 1)}

    frame_nbytes = {
        "g": shape.samples * bytes_per_sample(FrameKind.GAUSSIAN, layout.laplacian_encoding),
        "l": shape.samples * bytes_per_sample(FrameKind.LAPLACIAN, layout.laplacian_encoding),
    }

    class _ByteSink:
        def __init__(self, directory: Path):
            self.directory = directory
            directory.mkdir(parents=True, exist_ok=True)
            self.buffer = b""
            self.chunk = 0
            self.hash = xxhash.xxh64()
            self.chunk_bytes = layout.frames_per_chunk

        def write_frames(self, raw: bytes) -> None:
            self.hash.update(raw)
            self.buffer += raw
            limit = self.chunk_bytes * self._frame_size
            while len(self.buffer) >= limit:
                _atomic_write(self.directory / CHUNK_PATTERN.format(self.chunk), self.buffer[:limit])
                self.buffer = self.buffer[limit:]
                self.chunk += 1

        def close(self) -> str:
            if self.buffer:
                _atomic_write(self.directory / CHUNK_PATTERN.format(self.chunk), self.buffer)
                self.buffer = b""
            return self.hash.hexdigest()

    day_k = 0
    merged: dict[tuple[str, int], _ByteSink] = {}
    for tag in ("g", "l"):
        for level in range(1, merge + 1):
            sink = _ByteSink(root / tag.upper() / str(level))
            sink._frame_size = frame_nbytes[tag]
            merged[(tag, level)] = sink

    for shard in plan.shards:
        sdir = shard_dir(shard)
        ranges = _builder._shard_ranges(grids, schedule.strides, shard.start_slot,
                                        shard.end_slot, merge)
        for level in range(1, merge + 1):
            for tag in ("g", "l"):
                src_dir = sdir / tag.upper() / str(level)
                raws = sorted(src_dir.glob("chunk_*.raw"))
                payload = b"".join(p.read_bytes() for p in raws)
                if tag == "g" and level == merge:
                    fsize = frame_nbytes["g"]
                    keep = bytearray()
                    for j in range(len(payload) // fsize):
                        date = datetime.fromtimestamp(
                            day_grid.slot_time(day_k) // 1_000_000_000, tz=timezone.utc
                        ).date().isoformat()
                        kept_here = date not in drop
                        kept_flags.append(kept_here)
                        if kept_here:
                            keep += payload[j * fsize:(j + 1) * fsize]
                            post_missing.append(day_grid.is_missing(day_k))
                        day_k += 1
                    payload = bytes(keep)
                merged[(tag, level)].write_frames(payload)

    for level in range(1, merge + 1):
        checksums["G"][level] = merged[("g", level)].close()
        checksums["L"][level] = merged[("l", level)].close()

    post_day_grid = TimeGrid(day_grid.origin_ns, day_grid.period_ns,
                             sum(kept_flags), _builder._runs_from_flags(post_missing))

    # Upper levels stream from the merged day-level chunks.
    upper_grids = [post_day_grid]
    for s in schedule.strides[merge:]:
        upper_grids.append(subsample_grid(upper_grids[-1], s))
    n = schedule.levels
    if merge < n:
        day_seq = ChunkSequence(post_day_grid, shape, FrameKind.GAUSSIAN,
                                directory=root / "G" / str(merge),
                                encoding=layout.laplacian_encoding,
                                frames_per_chunk=layout.frames_per_chunk)
        upper_sinks: dict = {}
        for j, level in enumerate(range(merge + 1, n + 1)):
            gsink = ChunkSink(upper_grids[j + 1], shape, FrameKind.GAUSSIAN,
                              directory=root / "G" / str(level),
                              encoding=layout.laplacian_encoding,
                              frames_per_chunk=layout.frames_per_chunk)
            lsink = ChunkSink(upper_grids[j], shape, FrameKind.LAPLACIAN,
                              directory=root / "L" / str(level),
                              encoding=layout.laplacian_encoding,
                              frames_per_chunk=layout.frames_per_chunk)
            gsink.directory.mkdir(parents=True, exist_ok=True)
            lsink.directory.mkdir(parents=True, exist_ok=True)
            upper_sinks[("g", level)] = gsink
            upper_sinks[("l", level)] = lsink

        def on_upper(level, tag, idx, frame):
            upper_sinks[(tag, level)].append(frame)

        ranges = [(0, upper_grids[j].count) for j in range(n - merge)]
        _builder._run_levels(day_seq.iter_frames(), upper_grids[:-1],
                             schedule.strides[merge:], merge + 1, ranges, on_upper, {})
        for (tag, level), sink in upper_sinks.items():
            sink.finish()
            checksums["G" if tag == "g" else "L"][level] = sink.checksum

    # Level 0 copy of the input.
    in_sink = ChunkSink(source.grid, shape, FrameKind.GAUSSIAN,
                        directory=root / "G" / "0",
                        encoding=layout.laplacian_encoding,
                        frames_per_chunk=layout.frames_per_chunk)
    in_sink.directory.mkdir(parents=True, exist_ok=True)
    for frame in source.iter_frames():
        in_sink.append(frame)
    in_sink.finish()
    checksums["G"][0] = in_sink.checksum

    counts = [grids[i].count for i in range(merge)] + [g.count for g in upper_grids]
    missing = [grids[i].missing for i in range(merge)] + [g.missing for g in upper_grids]
    manifest = PyramidManifest(
        schedule=schedule,
        shape=shape,
        origin_ns=source.grid.origin_ns,
        counts=tuple(counts),
        missing=tuple(missing),
        drop_days=plan.drop_days,
        laplacian_encoding=layout.laplacian_encoding,
        chunk_size=layout.frames_per_chunk,
        checksums=checksums,
    )
    write_manifest(manifest, root)
    shutil.rmtree(shards_dir, ignore_errors=True)
    return manifest
