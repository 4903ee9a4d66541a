"""Temporal Laplacian pyramids and activity spectrograms for long
fixed-camera frame sequences."""

from .core import (
    ArraySequence,
    ChronoError,
    FrameKind,
    FrameSequence,
    FrameShape,
    FuncSequence,
    LevelSchedule,
    PyramidManifest,
    ScheduleError,
    StoreError,
    TimeGrid,
    level_period,
    schedule_for,
    slot_to_time,
)
from .builder import (
    Pyramid,
    ShardPlan,
    build_level,
    build_pyramid,
    build_sharded,
    fill_missing,
    plan_shards,
)
from .kernels import Kernel, kernel_for_stride, subsample, temporal_blur, upsample_blur
from .reconstructor import detail_mask, reconstruct, smooth_upsample
from .spectrogram import (
    SpectrogramGrid,
    compute_spectrogram,
    export_heatmap,
    frame_norm,
    log_map,
    render_laplacian,
)
from .synth import SceneSpec, band_energy_profile, generate, oracle_pyramid, timelapse_subsample
from .store import ChunkLayout, IngestSpec, ingest, read_pyramid, write_pyramid

__version__ = "0.1.0"
