"""Command-line entry point: ingest, build, reconstruct, spectrogram,
timelapse baseline, scene synthesis, serving, and manifest inspection."""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

from .core import (
    ChronoError,
    FrameShape,
    LevelSchedule,
    schedule_for,
)
from . import builder, spectrogram as spect, store, synth
from . import reconstructor as recon
from .server import ServeConfig, serve

logger = logging.getLogger(__name__)

_PERIOD_RE = re.compile(r"^\s*(\d+)?(?:/(\d+))?\s*(ns|us|ms|s|min|h|d)\s*$")
_UNIT_NS = {
    "ns": 1,
    "us": 1_000,
    "ms": 1_000_000,
    "s": 1_000_000_000,
    "min": 60 * 1_000_000_000,
    "h": 3_600 * 1_000_000_000,
    "d": 86_400 * 1_000_000_000,
}


def parse_period(text: str) -> Fraction:
    """Durations like '1/30s', '1s', '5min', '1h', '250ms' to rational ns."""
    m = _PERIOD_RE.match(text)
    if not m:
        raise ChronoError(f"cannot parse period {text!r} (want e.g. 1/30s, 60s, 5min)")
    num = int(m.group(1) or 1)
    den = int(m.group(2) or 1)
    return Fraction(num * _UNIT_NS[m.group(3)], den)


def parse_size(text: str) -> FrameShape:
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m:
        raise ChronoError(f"cannot parse size {text!r} (want WIDTHxHEIGHT)")
    return FrameShape(int(m.group(1)), int(m.group(2)), 1)


def _schedule_for_store(manifest, strides_arg: str | None) -> LevelSchedule:
    grid = manifest.grid(0)
    if strides_arg:
        strides = tuple(int(s) for s in strides_arg.split(","))
        return LevelSchedule.from_strides(grid.period_ns, strides)
    return schedule_for(grid.period_ns, grid.count * grid.period_ns)


def _cmd_synth(args) -> int:
    spec = synth.scene_from_json(Path(args.spec).read_text("utf-8"))
    seq = synth.generate(spec)
    layout = store.ChunkLayout(args.chunk_size, args.lap_encoding)
    store.write_level0_store(seq, args.out, layout)
    print(f"wrote {len(seq)} synthetic frames to {args.out}")
    return 0


def _cmd_ingest(args) -> int:
    spec = store.IngestSpec(
        source=args.source,
        kind=args.kind,
        pattern=args.pattern,
        period_ns=parse_period(args.period),
        snap_tolerance=args.tolerance,
        shape=parse_size(args.size) if args.size else None,
        grayscale=args.gray,
        origin_ns=args.origin_ns,
    )
    seq = store.ingest(spec)
    layout = store.ChunkLayout(args.chunk_size, args.lap_encoding)
    store.write_level0_store(seq, args.out, layout)
    missing = seq.grid.missing_slot_count()
    print(f"ingested {len(seq) - missing} frames into {len(seq)} slots "
          f"({missing} missing) at {args.out}")
    return 0


def _cmd_build(args) -> int:
    root = Path(args.root)
    manifest = store.read_manifest(root)
    source = store.read_pyramid(root, verify=False).gaussian_level(0)
    schedule = _schedule_for_store(manifest, args.strides)
    layout = store.ChunkLayout(manifest.chunk_size, args.lap_encoding)
    if args.sharded:
        try:
            plan = builder.plan_shards(source.grid, schedule)
        except builder.ShardError as exc:
            logger.warning("%s; building monolithically", exc)
            plan = None
        if plan is not None:
            builder.write_worklist(plan, root / "shards.tsv")
            built = store.build_sharded_store(source, schedule, plan, root,
                                              layout, workers=args.workers)
            print(f"built {built.levels} levels from {len(plan.shards)} day shards"
                  f" ({len(plan.drop_days)} drop days)")
            return 0
    built = store.build_store(source, schedule, root, layout)
    print(f"built {built.levels} levels at {root}")
    return 0


def _cmd_reconstruct(args) -> int:
    pyramid = store.read_pyramid(args.root, verify=False)
    mask = recon.detail_mask(args.mask, pyramid.levels)
    seq = recon.reconstruct_stream(pyramid, args.level, mask)
    out = Path(args.out)
    tmp = out.with_name(out.name + ".part")
    store.export_video(seq, fps=args.fps, path=tmp)
    tmp.replace(out)
    print(f"reconstructed level {args.level} (mask {args.mask}) to {out}")
    return 0


def _cmd_spectrogram(args) -> int:
    pyramid = store.read_pyramid(args.root, verify=False)
    grid = spect.compute_spectrogram(pyramid, norm=args.norm)
    level_range = None
    if args.levels:
        lo, _, hi = args.levels.partition("..")
        level_range = (int(lo), int(hi or lo))
    image, sidecar = spect.export_heatmap(
        grid, level_range=level_range, epsilon=args.epsilon,
        per_level=args.per_level, row_height=args.row_height)
    if not args.png and not args.json:
        raise ChronoError("nothing to do: pass --png and/or --json")
    if args.png:
        out = Path(args.png)
        tmp = out.with_name(out.name + ".part")
        image.save(tmp, format="PNG")
        tmp.replace(out)
        print(f"heatmap -> {out}")
    if args.json:
        out = Path(args.json)
        tmp = out.with_name(out.name + ".part")
        tmp.write_text(json.dumps(sidecar), "utf-8")
        tmp.replace(out)
        print(f"sidecar -> {out}")
    return 0


def _cmd_timelapse(args) -> int:
    pyramid = store.read_pyramid(args.root, verify=False)
    baseline = synth.timelapse_subsample(pyramid.gaussian_level(0), args.stride)
    out = Path(args.out)
    tmp = out.with_name(out.name + ".part")
    store.export_video(baseline, fps=args.fps, path=tmp)
    tmp.replace(out)
    print(f"timelapse (every {args.stride} frames) -> {out}")
    return 0


def _cmd_serve(args) -> int:
    config = ServeConfig(
        root=Path(args.root),
        host=args.host,
        port=args.port,
        thumb_cache_size=args.cache_size,
        static_dir=Path(args.static) if args.static else None,
        epsilon=args.epsilon,
    )
    serve(config)
    return 0


def _cmd_info(args) -> int:
    root = Path(args.root)
    manifest = store.read_manifest(root)
    sched = manifest.schedule
    total = 0
    print(f"pyramid at {root}")
    print(f"  frame: {manifest.shape.width}x{manifest.shape.height}"
          f"x{manifest.shape.channels}, laplacian {manifest.laplacian_encoding}")
    print(f"  base period: {sched.labels[0]}, origin_ns {manifest.origin_ns}")
    if manifest.drop_days:
        print(f"  drop days: {', '.join(manifest.drop_days)}")
    for i in range(manifest.levels + 1):
        missing = sum(e - s for s, e in manifest.missing[i])
        g = store.level_nbytes(manifest, store.FrameKind.GAUSSIAN, i)
        l = store.level_nbytes(manifest, store.FrameKind.LAPLACIAN, i) if i else 0
        total += g + l
        print(f"  level {i:2d}: {sched.labels[i]:>8s}  {manifest.counts[i]:>10d} frames"
              f"  {missing:>8d} missing  {g + l:>12d} bytes")
    print(f"  total: {total} bytes")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronopyr",
        description="Temporal pyramids and activity spectrograms for long "
                    "fixed-camera frame sequences.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_layout_flags(p):
        p.add_argument("--chunk-size", type=int, default=1024)
        p.add_argument("--lap-encoding", choices=("f32", "i16"), default="f32")

    p = sub.add_parser("synth", help="generate a synthetic scene into a level-0 store")
    p.add_argument("--spec", required=True, help="scene JSON document")
    p.add_argument("--out", required=True, help="store root to create")
    add_layout_flags(p)
    p.set_defaults(fn=_cmd_synth)

    p = sub.add_parser("ingest", help="snap source frames onto a level-0 store")
    p.add_argument("--source", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--period", required=True, help="nominal frame period, e.g. 1min")
    p.add_argument("--kind", choices=("image-directory", "manifest-list", "raw-stream"),
                   default="image-directory")
    p.add_argument("--pattern", help="filename timestamp tokens, e.g. YYYYMMDD_HHMM")
    p.add_argument("--tolerance", type=float, default=0.5)
    p.add_argument("--size", help="target WIDTHxHEIGHT")
    p.add_argument("--gray", action="store_true")
    p.add_argument("--origin-ns", type=int, default=None, help="raw-stream origin")
    add_layout_flags(p)
    p.set_defaults(fn=_cmd_ingest)

    p = sub.add_parser("build", help="build pyramid levels over a level-0 store")
    p.add_argument("--root", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sharded", action="store_true",
                   help="build per-day shards and merge at the one-day level")
    p.add_argument("--strides", help="override the schedule, e.g. 2,3,5,5")
    p.add_argument("--lap-encoding", choices=("f32", "i16"), default="f32")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("reconstruct", help="rebuild a level video from the pyramid")
    p.add_argument("--root", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--mask", default="all", help="'all', 'none', or bits like 0110")
    p.add_argument("--out", required=True)
    p.add_argument("--fps", type=float, default=30.0)
    p.set_defaults(fn=_cmd_reconstruct)

    p = sub.add_parser("spectrogram", help="export the activity heatmap")
    p.add_argument("--root", required=True)
    p.add_argument("--png")
    p.add_argument("--json")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--norm", choices=("l2", "l1"), default="l2")
    p.add_argument("--levels", help="row range, e.g. 1..8")
    p.add_argument("--per-level", action="store_true",
                   help="normalize colors per level instead of globally")
    p.add_argument("--row-height", type=int, default=16)
    p.set_defaults(fn=_cmd_spectrogram)

    p = sub.add_parser("timelapse", help="unfiltered subsampling baseline video")
    p.add_argument("--root", required=True)
    p.add_argument("--stride", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--fps", type=float, default=30.0)
    p.set_defaults(fn=_cmd_timelapse)

    p = sub.add_parser("serve", help="serve the pyramid over HTTP")
    p.add_argument("--root", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", help="explorer bundle directory")
    p.add_argument("--cache-size", type=int, default=256)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.set_defaults(fn=_cmd_serve)

    p = sub.add_parser("info", help="print a manifest summary")
    p.add_argument("--root", required=True)
    p.set_defaults(fn=_cmd_info)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except (ChronoError, ValueError, OSError) as exc:
        print(f"chronopyr-error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
