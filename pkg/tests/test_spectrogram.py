import numpy as np
import pytest

from chronopyr.builder import build_pyramid
from chronopyr.core import (
    DAY_NS,
    NS_PER_SECOND,
    ArraySequence,
    LevelSchedule,
    TimeGrid,
    schedule_for,
)
from chronopyr.spectrogram import (
    MISSING_COLOR,
    colormap,
    compute_spectrogram,
    export_heatmap,
    frame_norm,
    log_map,
    render_laplacian,
)
from chronopyr.synth import Blip, SceneSpec, Sinusoid, generate

SECOND = NS_PER_SECOND
MINUTE = 60 * SECOND


def test_frame_norm_345():
    frame = np.array([3.0, 4.0]).reshape(1, 2, 1)
    assert frame_norm(frame) == pytest.approx(5.0)


def test_frame_norm_zero_and_sqrt():
    assert frame_norm(np.zeros((2, 2, 1))) == 0.0
    assert frame_norm(np.ones((2, 2, 1))) == pytest.approx(2.0)


def test_frame_norm_l1():
    frame = np.array([[-3.0, 4.0]]).reshape(1, 2, 1)
    assert frame_norm(frame, "l1") == pytest.approx(7.0)


def test_frame_norm_scaling():
    rng = np.random.default_rng(0)
    frame = rng.normal(0, 50, (4, 4, 1))
    a = frame_norm(frame)
    b = frame_norm(2.5 * frame)
    assert b == pytest.approx(2.5 * a, rel=1e-6)


def test_log_map():
    assert log_map(0, 1.0) == 0.0
    assert log_map(99, 1.0) == pytest.approx(2.0)
    assert log_map(9, 1.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        log_map(1.0, 0.0)
    values = [log_map(v, 1.0) for v in (0, 1, 5, 50, 500)]
    assert values == sorted(values)
    assert len(set(values)) == len(values)


def test_render_laplacian():
    assert render_laplacian(np.array([[[0.0]]]))[0, 0, 0] == 128
    assert render_laplacian(np.array([[[254.0]]]))[0, 0, 0] == 255
    assert render_laplacian(np.array([[[-256.0]]]))[0, 0, 0] == 0


def test_spectrogram_constant_is_silent():
    data = np.full((300, 2, 2, 1), 130, np.float32)
    seq = ArraySequence(TimeGrid(0, SECOND, 300), data)
    pyr = build_pyramid(seq, LevelSchedule.from_strides(SECOND, (3, 2)))
    grid = compute_spectrogram(pyr)
    for row in grid.levels:
        assert row.norms.max() < 1e-3
        assert not row.missing.any()


def test_spectrogram_blip_support():
    spec = SceneSpec(width=2, height=2, count=450, period_ns=SECOND,
                     components=(Blip(225, 1, 90),))
    pyr = build_pyramid(generate(spec), LevelSchedule.from_strides(SECOND, (3, 5)))
    grid = compute_spectrogram(pyr)
    from chronopyr.builder import laplacian_support
    counts = pyr.manifest.counts
    for row in grid.levels:
        hot = np.nonzero(row.norms > 1e-6)[0]
        assert hot.size > 0
        for t in hot:
            lo, hi = laplacian_support(pyr.manifest.schedule, counts, row.level, int(t))
            assert lo <= 225 <= hi


def test_spectrogram_missing_day_flags():
    sched = schedule_for(MINUTE, 3 * DAY_NS)
    spec = SceneSpec(width=2, height=2, count=3 * 1440, period_ns=MINUTE, base=100,
                     missing=((1440, 2880),))
    pyr = build_pyramid(generate(spec), sched)
    grid = compute_spectrogram(pyr)
    # A single missing day can flag every level strictly below the one-day
    # level; the day-boundary band's window spans more than one day.
    for row in grid.levels:
        if row.level >= sched.day_level:
            continue
        seq_grid = pyr.laplacian_level(row.level).grid
        flagged = np.nonzero(row.missing)[0]
        assert flagged.size > 0, f"level {row.level} has no missing cells"
        # Interior of the missing day is flagged.
        mid_ns = DAY_NS + DAY_NS // 2
        mid = seq_grid.slot_at(mid_ns)
        assert row.missing[mid]
        # Cells a safe distance outside the day are not flagged.
        assert not row.missing[0]


def test_spectrogram_energy_totals():
    rng = np.random.default_rng(1)
    data = rng.uniform(0, 255, (600, 2, 2, 1)).astype(np.float32)
    seq = ArraySequence(TimeGrid(0, SECOND, 600), data)
    pyr = build_pyramid(seq, LevelSchedule.from_strides(SECOND, (2, 3)))
    grid = compute_spectrogram(pyr)
    for row in grid.levels:
        lap = pyr.laplacian_level(row.level).to_array().astype(np.float64)
        total = float(np.sum(lap * lap))
        assert np.sum(row.norms ** 2) == pytest.approx(total, rel=1e-6)


def test_spectrogram_periodic_input_periodic_norms():
    period = 30
    spec = SceneSpec(width=1, height=1, count=900, period_ns=SECOND, base=128,
                     components=(Sinusoid(period_slots=period, amplitude=60),))
    pyr = build_pyramid(generate(spec), LevelSchedule.from_strides(SECOND, (3,)))
    row = compute_spectrogram(pyr).level(1)
    # Skip the first full kernel support, then norms repeat with the period.
    a = row.norms[40:40 + period * 20]
    b = row.norms[40 + period:40 + period * 21]
    np.testing.assert_allclose(a, b, rtol=1e-5, atol=1e-6)


def test_colormap_monotone_dark_to_bright():
    lows = colormap(0.0)
    highs = colormap(1.0)
    assert sum(highs) > sum(lows)
    lum = [sum(colormap(x / 20)) for x in range(21)]
    assert all(b >= a - 6 for a, b in zip(lum, lum[1:]))


def test_export_heatmap_endpoints():
    norms = [0.0, 99.0]
    data = np.zeros((2, 1, 1, 1), np.float32)
    seq = ArraySequence(TimeGrid(0, SECOND, 2), data)
    pyr = build_pyramid(seq, LevelSchedule.from_strides(SECOND, (2,)))
    grid = compute_spectrogram(pyr)
    object.__setattr__(grid.levels[0], "norms", np.asarray(norms))
    image, sidecar = export_heatmap(grid, epsilon=1.0, row_height=4)
    arr = np.asarray(image)
    assert tuple(arr[0, 0]) == colormap(0.0)
    assert tuple(arr[0, -1]) == colormap(1.0)
    assert sidecar["epsilon"] == 1.0
    assert sidecar["norm"] == "l2"
    assert sidecar["levels"][0]["norms"] == norms


def test_export_heatmap_all_missing_uses_reserved_color():
    spec = SceneSpec(width=1, height=1, count=60, period_ns=SECOND,
                     missing=((0, 60),))
    pyr = build_pyramid(generate(spec), LevelSchedule.from_strides(SECOND, (3,)))
    grid = compute_spectrogram(pyr)
    assert grid.level(1).missing.all()
    image, sidecar = export_heatmap(grid)
    arr = np.asarray(image)
    assert np.all(arr.reshape(-1, 3) == MISSING_COLOR)
    assert sidecar["levels"][0]["missing"] == [[0, 60]]


def test_export_heatmap_rows_stack_top_level_first():
    rng = np.random.default_rng(2)
    data = rng.uniform(0, 255, (180, 1, 1, 1)).astype(np.float32)
    seq = ArraySequence(TimeGrid(0, SECOND, 180), data)
    pyr = build_pyramid(seq, LevelSchedule.from_strides(SECOND, (2, 3)))
    grid = compute_spectrogram(pyr)
    image, _ = export_heatmap(grid, row_height=3)
    assert image.size[1] == 6
    image_one, _ = export_heatmap(grid, level_range=(2, 2), row_height=3)
    assert image_one.size[1] == 3


def test_export_heatmap_empty_selection():
    data = np.zeros((4, 1, 1, 1), np.float32)
    seq = ArraySequence(TimeGrid(0, SECOND, 4), data)
    pyr = build_pyramid(seq, LevelSchedule.from_strides(SECOND, (2,)))
    grid = compute_spectrogram(pyr)
    with pytest.raises(ValueError):
        export_heatmap(grid, level_range=(5, 9))


def test_export_heatmap_per_level_normalization():
    rng = np.random.default_rng(5)
    # Level 2 has much weaker content; per-level scaling stretches its row.
    data = rng.uniform(0, 255, (360, 1, 1, 1)).astype(np.float32)
    seq = ArraySequence(TimeGrid(0, SECOND, 360), data)
    pyr = build_pyramid(seq, LevelSchedule.from_strides(SECOND, (2, 3)))
    grid = compute_spectrogram(pyr)
    global_img, _ = export_heatmap(grid, row_height=2)
    local_img, _ = export_heatmap(grid, row_height=2, per_level=True)
    g = np.asarray(global_img).astype(int)
    l = np.asarray(local_img).astype(int)
    assert g.shape == l.shape
    assert np.any(g != l)
    # Per-level rows each reach the top of the color scale somewhere.
    from chronopyr.spectrogram import colormap
    top_color = np.array(colormap(1.0))
    for row in range(2):
        band = l[row * 2]
        assert (band == top_color).all(axis=-1).any()
