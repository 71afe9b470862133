"""Interval algebra for glance metrics, checked against per-ms counting."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from flowlens.glance import (
    LONG_GLANCE_THRESHOLD_MS,
    build_timeline,
    clip_glances_to_window,
    compute_sequence_metrics,
    metric_value,
    sequence_driving_context,
    sequence_glance_metrics,
)
from flowlens.model import (
    Aoi,
    DrivingSample,
    Gesture,
    GlanceEvent,
    InteractionEvent,
    MetricKind,
    Sequence,
)
from oracles import grid_offroad_glance_metrics


def glance(t_start: int, t_end: int, aoi: Aoi = Aoi.CENTER_STACK) -> GlanceEvent:
    return GlanceEvent("T1", t_start, t_end - t_start, aoi)


def sequence_spanning(t_first: int, t_last: int, n: int = 2) -> Sequence:
    times = [t_first + round(i * (t_last - t_first) / (n - 1)) for i in range(n)]
    times[-1] = t_last
    events = tuple(
        InteractionEvent("T1", t, f"E{i}", Gesture.TAP, "S_MAIN") for i, t in enumerate(times)
    )
    return Sequence("T1:0", "T1", events, t_first, t_last)


THREE_GLANCES = [
    glance(0, 1500, Aoi.ROAD),
    glance(1500, 4200, Aoi.CENTER_STACK),
    glance(4200, 6000, Aoi.ROAD),
]


class TestClipping:
    def test_interior_glance_kept_whole(self):
        (clipped,) = clip_glances_to_window([glance(1500, 4200)], (1000, 5000))
        assert (clipped.clipped_start, clipped.clipped_duration) == (1500, 2700)
        assert clipped.original_duration == 2700

    def test_left_overhang_clipped(self):
        (clipped,) = clip_glances_to_window([glance(0, 1500, Aoi.ROAD)], (1000, 5000))
        assert (clipped.clipped_start, clipped.clipped_duration) == (1000, 500)
        assert clipped.original_duration == 1500

    def test_disjoint_glance_dropped(self):
        assert clip_glances_to_window([glance(6000, 7000)], (1000, 5000)) == []

    def test_order_preserved(self):
        clipped = clip_glances_to_window(THREE_GLANCES, (1000, 5000))
        assert [c.aoi for c in clipped] == [Aoi.ROAD, Aoi.CENTER_STACK, Aoi.ROAD]


class TestGlanceMetrics:
    def test_worked_window(self):
        summary = sequence_glance_metrics(sequence_spanning(1000, 5000), THREE_GLANCES)
        assert summary.glance_count_offroad == 1
        assert summary.total_glance_duration_offroad == 2700
        assert summary.mean_glance_duration_offroad == 2700
        assert summary.long_glance_count == 1

    def test_exactly_2000ms_is_not_long(self):
        summary = sequence_glance_metrics(
            sequence_spanning(0, 2000), [glance(0, 2000, Aoi.CENTER_STACK)]
        )
        assert summary.total_glance_duration_offroad == LONG_GLANCE_THRESHOLD_MS
        assert summary.long_glance_count == 0

    def test_2001ms_is_long(self):
        summary = sequence_glance_metrics(
            sequence_spanning(0, 2001), [glance(0, 2001, Aoi.CENTER_STACK)]
        )
        assert summary.long_glance_count == 1

    def test_no_offroad_glances_mean_absent(self):
        summary = sequence_glance_metrics(
            sequence_spanning(0, 1000), [glance(0, 1000, Aoi.ROAD)]
        )
        assert summary.glance_count_offroad == 0
        assert summary.total_glance_duration_offroad == 0
        assert summary.mean_glance_duration_offroad is None

    def test_other_aoi_counts_as_offroad(self):
        summary = sequence_glance_metrics(
            sequence_spanning(0, 1000), [glance(200, 500, Aoi.OTHER)]
        )
        assert summary.glance_count_offroad == 1


class TestDrivingContext:
    def test_mean_of_samples_in_window(self):
        samples = [DrivingSample("T1", t, v, 0.0) for t, v in [(0, 10), (500, 12), (900, 14)]]
        assert sequence_driving_context(sequence_spanning(0, 1000), samples) == 12.0

    def test_no_samples_absent(self):
        samples = [DrivingSample("T1", 5000, 10.0, 0.0)]
        assert sequence_driving_context(sequence_spanning(0, 1000), samples) is None

    def test_single_sample(self):
        samples = [DrivingSample("T1", 500, 17.5, 0.0)]
        assert sequence_driving_context(sequence_spanning(0, 1000), samples) == 17.5


class TestComposedMetrics:
    def test_dry_sequence(self):
        seq = sequence_spanning(0, 1200, n=3)
        metrics = compute_sequence_metrics(seq)
        assert metrics.time_on_task == 1200
        assert metrics.n_interactions == 3
        assert metrics.glance_count_offroad == 0
        assert metrics.mean_speed is None

    def test_composition_matches_parts(self):
        seq = sequence_spanning(1000, 5000)
        metrics = compute_sequence_metrics(seq, THREE_GLANCES)
        summary = sequence_glance_metrics(seq, THREE_GLANCES)
        assert metrics.glance_count_offroad == summary.glance_count_offroad
        assert metrics.total_glance_duration_offroad == summary.total_glance_duration_offroad
        assert metrics.long_glance_count == summary.long_glance_count

    def test_metric_value_lookup(self):
        metrics = compute_sequence_metrics(sequence_spanning(0, 1200, n=3))
        assert metric_value(metrics, MetricKind.TIME_ON_TASK) == 1200.0
        assert metric_value(metrics, MetricKind.N_INTERACTIONS) == 3.0
        assert metric_value(metrics, MetricKind.MEAN_SPEED) is None


class TestTimeline:
    def test_zero_margin_window_is_the_span(self):
        timeline = build_timeline(sequence_spanning(1000, 5000), margin=0)
        assert timeline.window == (1000, 5000)

    def test_margin_pulls_in_earlier_context(self):
        seq = sequence_spanning(10000, 12000)
        early = glance(6000, 7000, Aoi.CENTER_STACK)
        timeline = build_timeline(seq, glances=[early], margin=5000)
        assert timeline.window[0] == 6000
        assert timeline.glance_lanes[Aoi.CENTER_STACK] == ((6000, 1000),)

    def test_window_floored_at_earliest_record(self):
        seq = sequence_spanning(1000, 2000)
        driving = [DrivingSample("T1", 800, 10.0, 0.0)]
        timeline = build_timeline(seq, driving=driving, margin=50000)
        assert timeline.window[0] == 800
        assert timeline.window[1] == 52000

    def test_markers_are_the_sequence_interactions(self):
        seq = sequence_spanning(0, 3000, n=4)
        timeline = build_timeline(seq, margin=100)
        assert len(timeline.interaction_markers) == 4
        assert [t for t, _, _ in timeline.interaction_markers] == [0, 1000, 2000, 3000]

    def test_driving_series_filtered_to_window(self):
        seq = sequence_spanning(1000, 2000)
        driving = [DrivingSample("T1", t, 10.0, 0.0) for t in (0, 900, 1500, 2100, 9000)]
        timeline = build_timeline(seq, driving=driving, margin=200)
        assert [t for t, _, _ in timeline.driving_series] == [900, 1500, 2100]

    def test_negative_margin_rejected(self):
        with pytest.raises(ValueError):
            build_timeline(sequence_spanning(0, 1000), margin=-1)


@st.composite
def glance_sets(draw):
    """Non-overlapping glances tiling forward from a random origin."""
    t = draw(st.integers(min_value=0, max_value=3000))
    glances = []
    for _ in range(draw(st.integers(min_value=0, max_value=8))):
        t += draw(st.integers(min_value=0, max_value=400))
        duration = draw(st.integers(min_value=1, max_value=2600))
        glances.append(GlanceEvent("T1", t, duration, draw(st.sampled_from(list(Aoi)))))
        t += duration
    return glances


@settings(max_examples=150, deadline=None)
@given(
    glances=glance_sets(),
    window_start=st.integers(min_value=0, max_value=4000),
    window_length=st.integers(min_value=1, max_value=3000),
)
def test_interval_arithmetic_matches_grid_oracle(glances, window_start, window_length):
    seq = sequence_spanning(window_start, window_start + window_length)
    summary = sequence_glance_metrics(seq, glances)
    count, total, mean, long_count = grid_offroad_glance_metrics(
        glances, (seq.t_first, seq.t_last)
    )
    assert summary.glance_count_offroad == count
    assert summary.total_glance_duration_offroad == total
    assert summary.mean_glance_duration_offroad == mean
    assert summary.long_glance_count == long_count


@settings(max_examples=60, deadline=None)
@given(glances=glance_sets(), shift=st.integers(min_value=0, max_value=10**6))
def test_metrics_invariant_under_time_translation(glances, shift):
    seq = sequence_spanning(500, 3500)
    shifted_seq = sequence_spanning(500 + shift, 3500 + shift)
    shifted_glances = [
        GlanceEvent(g.trip_id, g.t_start + shift, g.duration, g.aoi) for g in glances
    ]
    assert sequence_glance_metrics(seq, glances) == sequence_glance_metrics(
        shifted_seq, shifted_glances
    )


@settings(max_examples=60, deadline=None)
@given(glances=glance_sets())
def test_clipped_durations_never_exceed_window(glances):
    window = (1000, 4000)
    clipped = clip_glances_to_window(glances, window)
    assert sum(c.clipped_duration for c in clipped) <= window[1] - window[0]


@settings(max_examples=60, deadline=None)
@given(glances=glance_sets())
def test_long_count_non_increasing_in_threshold(glances):
    window = (0, 6000)
    counts = [
        grid_offroad_glance_metrics(glances, window, long_threshold=threshold)[3]
        for threshold in (500, 1000, 2000, 3000)
    ]
    assert counts == sorted(counts, reverse=True)
