"""Read-only HTTP API over a pyramid root: manifest, spectrogram slices,
thumbnails, frames, and level videos with byte-range support.

The pyramid data itself is never mutated; lazily encoded video slices land
in a cache/ directory beside it, keyed by level, slot range, and encoder
settings, with a single flight per key so concurrent misses encode once.
"""

from __future__ import annotations

import json
import logging
import math
import re
import threading
from collections import OrderedDict
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from io import BytesIO
from pathlib import Path
from urllib.parse import parse_qs, urlparse

import xxhash

from .core import DAY_NS, FuncSequence, StoreError, TimeGrid
from .spectrogram import compute_spectrogram, log_map
from .store import encoder_template, export_thumbnail, export_video, read_pyramid

logger = logging.getLogger(__name__)

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


@dataclass
class ServeConfig:
    root: Path
    host: str = "127.0.0.1"
    port: int = 8000
    thumb_cache_size: int = 256
    static_dir: Path | None = None
    fps: float = 30.0
    epsilon: float = 1.0


def iso_time(ns: int) -> str:
    seconds, frac = divmod(int(ns), 1_000_000_000)
    stamp = datetime.fromtimestamp(seconds, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%S")
    if frac:
        stamp += f".{frac:09d}".rstrip("0")
    return stamp + "Z"


def _period_json(period) -> int | list[int]:
    period = Fraction(period)
    return int(period) if period.denominator == 1 else [period.numerator, period.denominator]


class _LRU:
    def __init__(self, size: int):
        self.size = max(1, size)
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                return self._data[key]
            return None

    def put(self, key, value):
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.size:
                self._data.popitem(last=False)


class HttpError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


class PyramidService:
    """Request-independent state: the open pyramid, caches, and locks."""

    def __init__(self, config: ServeConfig):
        self.config = config
        self.root = Path(config.root)
        self.pyramid = read_pyramid(self.root, verify=False)
        self.manifest = self.pyramid.manifest
        self.thumbs = _LRU(config.thumb_cache_size)
        self.cache_dir = self.root / "cache"
        self._flights: dict[str, threading.Lock] = {}
        self._flights_lock = threading.Lock()
        self._spectrogram = None
        self._spectrogram_lock = threading.Lock()

    def level_grid(self, level: int) -> TimeGrid:
        if not 0 <= level <= self.manifest.levels:
            raise HttpError(404, f"level {level} out of range")
        return self.manifest.grid(level)

    def spectrogram(self):
        with self._spectrogram_lock:
            if self._spectrogram is None:
                self._spectrogram = compute_spectrogram(self.pyramid)
            return self._spectrogram

    def manifest_doc(self) -> dict:
        m = self.manifest
        sched = m.schedule
        levels = []
        for i in range(m.levels + 1):
            levels.append({
                "level": i,
                "label": sched.labels[i],
                "period_ns": _period_json(sched.level_period_ns(i)),
                "count": m.counts[i],
                "missing": [list(r) for r in m.missing[i]],
                "origin_ns": m.level_origin_ns(i),
            })
        return {
            "levels": levels,
            "width": m.shape.width,
            "height": m.shape.height,
            "channels": m.shape.channels,
            "base_period_ns": _period_json(sched.base_period_ns),
            "origin_ns": m.origin_ns,
            "strides": list(sched.strides),
            "day_level": sched.day_level,
            "year_level": sched.year_level,
            "drop_days": list(m.drop_days),
        }

    def spectrogram_doc(self, level_lo: int, level_hi: int,
                        from_ns: int | None, to_ns: int | None) -> dict:
        grid = self.spectrogram()
        out: dict = {"levels": [], "epsilon": self.config.epsilon, "norm": grid.norm}
        for row in grid.levels:
            if not level_lo <= row.level <= level_hi:
                continue
            first, last = 0, row.count
            if from_ns is not None:
                first = max(0, math.floor(Fraction(from_ns - row.origin_ns) / row.tile_period_ns))
            if to_ns is not None:
                last = min(row.count, math.ceil(Fraction(to_ns - row.origin_ns) / row.tile_period_ns))
            first = min(first, row.count)
            last = max(last, first)
            norms = row.norms[first:last]
            out["levels"].append({
                "level": row.level,
                "origin_ns": row.origin_ns,
                "period_ns": _period_json(row.tile_period_ns),
                "first_slot": first,
                "norms": [float(v) for v in norms],
                "log": [log_map(float(v), self.config.epsilon) for v in norms],
                "missing": [bool(b) for b in row.missing[first:last]],
            })
        return out

    def thumbnail(self, level: int, slot: int, kind: str) -> tuple[bytes, dict]:
        key = (level, slot, kind)
        cached = self.thumbs.get(key)
        if cached is not None:
            return cached
        if kind == "L":
            if not 1 <= level <= self.manifest.levels:
                raise HttpError(404, f"no laplacian level {level}")
            seq = self.pyramid.laplacian_level(level)
        elif kind == "G":
            if not 0 <= level <= self.manifest.levels:
                raise HttpError(404, f"no level {level}")
            seq = self.pyramid.gaussian_level(level)
        else:
            raise HttpError(404, f"unknown frame kind {kind!r}")
        if not 0 <= slot < len(seq):
            raise HttpError(404, f"slot {slot} out of range for level {level}")
        image = export_thumbnail(seq.frame(slot), seq.kind)
        buf = BytesIO()
        image.save(buf, "PNG")
        grid = seq.grid
        start = grid.slot_time(slot)
        end = start + math.floor(grid.period_ns)
        result = (buf.getvalue(), {"X-Frame-Time": f"{iso_time(start)}/{iso_time(end)}"})
        self.thumbs.put(key, result)
        return result

    def video_slice(self, level: int, from_ns: int | None, to_ns: int | None,
                    fps: float | None = None) -> Path:
        """Encode (once) and return the cached video file for a time window
        of one Gaussian level."""
        grid = self.level_grid(level)
        lo = 0
        hi = grid.count
        if from_ns is not None:
            lo = max(0, _ceil_frac(from_ns - grid.origin_ns, grid.period_ns))
        if to_ns is not None:
            hi = min(grid.count, _ceil_frac(to_ns - grid.origin_ns, grid.period_ns))
        if hi <= lo:
            raise HttpError(404, f"no frames of level {level} in the requested window")
        fps = fps or self.config.fps
        template = encoder_template()
        key = xxhash.xxh64(f"{level}:{lo}:{hi}:{fps}:{template}".encode()).hexdigest()
        path = self.cache_dir / f"level{level}_{key}.mp4"
        if path.exists():
            return path
        with self._flights_lock:
            flight = self._flights.setdefault(key, threading.Lock())
        with flight:
            if path.exists():
                return path
            seq = self.pyramid.gaussian_level(level)
            window = FuncSequence(_window_grid(grid, lo, hi), seq.shape, seq.kind,
                                  lambda i: seq.frame(lo + i))
            self.cache_dir.mkdir(exist_ok=True)
            tmp = path.with_suffix(".tmp")
            export_video(window, fps=fps, path=tmp, template=template)
            tmp.replace(path)
        return path

    def day_video(self, level: int, date: str) -> Path:
        if not _DATE_RE.match(date):
            raise HttpError(404, f"bad date {date!r}")
        try:
            day = datetime.fromisoformat(date).replace(tzinfo=timezone.utc)
        except ValueError:
            raise HttpError(404, f"bad date {date!r}") from None
        start = int(day.timestamp()) * 1_000_000_000
        return self.video_slice(level, start, start + DAY_NS)


def _ceil_frac(a, b) -> int:
    return int(math.ceil(Fraction(a) / Fraction(b)))


def _window_grid(grid: TimeGrid, lo: int, hi: int) -> TimeGrid:
    runs = []
    for s, e in grid.missing:
        s2, e2 = max(s, lo) - lo, min(e, hi) - lo
        if e2 > s2:
            runs.append((s2, e2))
    return TimeGrid(grid.slot_time(lo), grid.period_ns, hi - lo, tuple(runs))


def parse_byte_range(header: str, size: int) -> tuple[int, int]:
    """Parse 'bytes=a-b' against a resource size; raises 416 when invalid."""
    m = re.fullmatch(r"bytes=(\d*)-(\d*)", header.strip())
    if not m or (not m.group(1) and not m.group(2)):
        raise HttpError(416, f"unsatisfiable range {header!r}")
    if m.group(1):
        first = int(m.group(1))
        last = int(m.group(2)) if m.group(2) else size - 1
    else:
        # Suffix form: last N bytes.
        n = int(m.group(2))
        if n == 0:
            raise HttpError(416, "zero-length suffix range")
        first, last = max(0, size - n), size - 1
    if first >= size or last < first:
        raise HttpError(416, f"range {header!r} outside size {size}")
    return first, min(last, size - 1)


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    service: PyramidService

    def log_message(self, fmt, *args):
        logger.debug("%s " + fmt, self.address_string(), *args)

    def _send(self, status: int, body: bytes, content_type: str,
              extra: dict | None = None) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        for k, v in (extra or {}).items():
            self.send_header(k, v)
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, doc: dict, status: int = 200) -> None:
        self._send(status, json.dumps(doc).encode("utf-8"), "application/json; charset=utf-8")

    def _send_error_json(self, status: int, message: str) -> None:
        self._send_json({"error": message}, status)

    def _send_file_ranged(self, path: Path, content_type: str) -> None:
        data = path.read_bytes()
        header = self.headers.get("Range")
        if header is None:
            self._send(200, data, content_type, {"Accept-Ranges": "bytes"})
            return
        first, last = parse_byte_range(header, len(data))
        body = data[first:last + 1]
        self._send(206, body, content_type, {
            "Accept-Ranges": "bytes",
            "Content-Range": f"bytes {first}-{last}/{len(data)}",
        })

    def do_GET(self):
        try:
            self._route()
        except HttpError as exc:
            self._send_error_json(exc.status, str(exc))
        except StoreError as exc:
            # Data files absent or unreadable mid-merge.
            status = 503 if "missing chunk" in str(exc) else 500
            self._send_error_json(status, str(exc))
        except BrokenPipeError:
            pass
        except Exception as exc:  # pragma: no cover - defensive
            logger.exception("request failed")
            self._send_error_json(500, str(exc))

    def _query(self) -> dict:
        return parse_qs(urlparse(self.path).query)

    def _query_int(self, q: dict, name: str) -> int | None:
        if name not in q:
            return None
        try:
            return int(q[name][0])
        except ValueError:
            raise HttpError(404, f"bad integer for {name!r}")

    def _route(self):
        path = urlparse(self.path).path
        svc = self.service

        if path == "/api/manifest":
            self._send_json(svc.manifest_doc())
            return

        if path == "/api/spectrogram":
            q = self._query()
            lo, hi = 1, svc.manifest.levels
            if "levels" in q:
                m = re.fullmatch(r"(\d+)\.\.(\d+)", q["levels"][0])
                if not m:
                    raise HttpError(404, "levels must look like 1..5")
                lo, hi = int(m.group(1)), int(m.group(2))
            self._send_json(svc.spectrogram_doc(lo, hi, self._query_int(q, "from"),
                                                self._query_int(q, "to")))
            return

        m = re.fullmatch(r"/api/level/(\d+)/frame/(\d+)/thumb\.png", path)
        if m:
            q = self._query()
            kind = q.get("kind", ["G"])[0]
            body, extra = svc.thumbnail(int(m.group(1)), int(m.group(2)), kind)
            self._send(200, body, "image/png", extra)
            return

        m = re.fullmatch(r"/api/level/(\d+)/video", path)
        if m:
            q = self._query()
            fps = float(q["fps"][0]) if "fps" in q else None
            clip = svc.video_slice(int(m.group(1)), self._query_int(q, "from"),
                                   self._query_int(q, "to"), fps)
            self._send_file_ranged(clip, "video/mp4")
            return

        m = re.fullmatch(r"/api/level/(\d+)/day/([0-9-]+)/video", path)
        if m:
            clip = svc.day_video(int(m.group(1)), m.group(2))
            self._send_file_ranged(clip, "video/mp4")
            return

        if self._serve_static(path):
            return
        raise HttpError(404, f"no route for {path}")

    def _serve_static(self, path: str) -> bool:
        static = self.service.config.static_dir
        if static is None:
            if path == "/":
                body = (b"<!doctype html><title>chronopyr</title>"
                        b"<p>No explorer bundle configured; see /api/manifest.</p>")
                self._send(200, body, "text/html; charset=utf-8")
                return True
            return False
        static = Path(static).resolve()
        name = path.lstrip("/") or "index.html"
        target = (static / name).resolve()
        if not str(target).startswith(str(static)) or not target.is_file():
            if path == "/":
                raise HttpError(404, "explorer bundle has no index.html")
            return False
        ctype = {
            ".html": "text/html; charset=utf-8",
            ".js": "text/javascript; charset=utf-8",
            ".mjs": "text/javascript; charset=utf-8",
            ".css": "text/css; charset=utf-8",
            ".map": "application/json",
            ".png": "image/png",
            ".svg": "image/svg+xml",
        }.get(target.suffix, "application/octet-stream")
        self._send(200, target.read_bytes(), ctype)
        return True


def make_server(config: ServeConfig) -> ThreadingHTTPServer:
    """Build (but do not run) the HTTP server; callers own serve_forever."""
    service = PyramidService(config)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((config.host, config.port), handler)


def serve(config: ServeConfig) -> None:
    server = make_server(config)
    host, port = server.server_address[:2]
    logger.info("serving pyramid %s on http://%s:%s/", config.root, host, port)
    try:
        server.serve_forever()
    finally:
        server.server_close()
