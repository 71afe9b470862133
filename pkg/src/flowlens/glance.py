"""Distraction and driving-context metrics over a sequence's task window.

All glance arithmetic is interval algebra on integer milliseconds: glances
are clipped to the window [t_first, t_last] and only the clipped portions
count. Off-road means any area of interest other than the road. A long
glance is an off-road glance whose clipped duration exceeds 2000 ms
strictly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence as SequenceOf

from .model import (
    Aoi,
    DrivingSample,
    GlanceEvent,
    InteractionEvent,
    MetricKind,
    OFFROAD_AOIS,
    Sequence,
)

#: Off-road dwell beyond this many milliseconds counts as a long glance.
LONG_GLANCE_THRESHOLD_MS = 2000

#: Default context margin around a sequence in the detail timeline.
DEFAULT_TIMELINE_MARGIN_MS = 5000


@dataclass(frozen=True, slots=True)
class ClippedGlance:
    """The portion of a glance falling inside an analysis window."""

    aoi: Aoi
    clipped_start: int
    clipped_duration: int
    original_duration: int


@dataclass(frozen=True, slots=True)
class OffroadGlanceSummary:
    """Glance-derived fields of SequenceMetrics."""

    glance_count_offroad: int
    total_glance_duration_offroad: int
    mean_glance_duration_offroad: Optional[float]
    long_glance_count: int


@dataclass(frozen=True, slots=True)
class SequenceMetrics:
    """All per-sequence metrics; means are absent when their count is zero."""

    sequence_id: str
    time_on_task: int
    n_interactions: int
    glance_count_offroad: int
    total_glance_duration_offroad: int
    mean_glance_duration_offroad: Optional[float]
    long_glance_count: int
    mean_speed: Optional[float]

    def to_dict(self) -> dict:
        out = {
            "sequence_id": self.sequence_id,
            "time_on_task": self.time_on_task,
            "n_interactions": self.n_interactions,
            "glance_count_offroad": self.glance_count_offroad,
            "total_glance_duration_offroad": self.total_glance_duration_offroad,
            "long_glance_count": self.long_glance_count,
        }
        if self.mean_glance_duration_offroad is not None:
            out["mean_glance_duration_offroad"] = self.mean_glance_duration_offroad
        if self.mean_speed is not None:
            out["mean_speed"] = self.mean_speed
        return out


def metric_value(metrics: SequenceMetrics, kind: MetricKind) -> Optional[float]:
    """The value of one metric, or None when that metric is absent."""
    value = getattr(metrics, kind.value)
    return None if value is None else float(value)


@dataclass(frozen=True, slots=True)
class SequenceTimeline:
    """The sequence-detail view data: glance lanes, driving series, markers."""

    sequence_id: str
    window: tuple[int, int]
    glance_lanes: Mapping[Aoi, tuple[tuple[int, int], ...]]
    driving_series: tuple[tuple[int, float, float], ...]
    interaction_markers: tuple[tuple[int, str, str], ...]

    def to_dict(self) -> dict:
        return {
            "sequence_id": self.sequence_id,
            "window": list(self.window),
            "glance_lanes": {
                aoi.value: [
                    {"t_start": start, "duration": duration}
                    for start, duration in self.glance_lanes.get(aoi, ())
                ]
                for aoi in Aoi
            },
            "driving_series": [
                {"t": t, "speed": speed, "steering_angle": angle}
                for t, speed, angle in self.driving_series
            ],
            "interaction_markers": [
                {"t": t, "element_id": element_id, "gesture": gesture}
                for t, element_id, gesture in self.interaction_markers
            ],
        }


def clip_glances_to_window(
    glances: SequenceOf[GlanceEvent],
    window: tuple[int, int],
) -> list[ClippedGlance]:
    """Intersect each glance with the window; keep only positive overlaps."""
    t_lo, t_hi = window
    clipped: list[ClippedGlance] = []
    for g in glances:
        start = max(g.t_start, t_lo)
        end = min(g.t_end, t_hi)
        if end > start:
            clipped.append(ClippedGlance(g.aoi, start, end - start, g.duration))
    return clipped


def sequence_glance_metrics(
    sequence: Sequence,
    glances: SequenceOf[GlanceEvent],
) -> OffroadGlanceSummary:
    """Off-road glance metrics over the sequence's own window [t_first, t_last]."""
    clipped = clip_glances_to_window(glances, (sequence.t_first, sequence.t_last))
    offroad = [c for c in clipped if c.aoi in OFFROAD_AOIS]
    count = len(offroad)
    total = sum(c.clipped_duration for c in offroad)
    return OffroadGlanceSummary(
        glance_count_offroad=count,
        total_glance_duration_offroad=total,
        mean_glance_duration_offroad=total / count if count else None,
        long_glance_count=sum(
            1 for c in offroad if c.clipped_duration > LONG_GLANCE_THRESHOLD_MS
        ),
    )


def sequence_driving_context(
    sequence: Sequence,
    driving: SequenceOf[DrivingSample],
) -> Optional[float]:
    """Mean speed over samples inside [t_first, t_last]; None when there are none."""
    speeds = [s.speed for s in driving if sequence.t_first <= s.t <= sequence.t_last]
    return sum(speeds) / len(speeds) if speeds else None


def compute_sequence_metrics(
    sequence: Sequence,
    glances: SequenceOf[GlanceEvent] = (),
    driving: SequenceOf[DrivingSample] = (),
) -> SequenceMetrics:
    """All metrics for one sequence from its trip's glance and driving streams."""
    summary = sequence_glance_metrics(sequence, glances)
    return SequenceMetrics(
        sequence_id=sequence.sequence_id,
        time_on_task=sequence.t_last - sequence.t_first,
        n_interactions=len(sequence.interactions),
        glance_count_offroad=summary.glance_count_offroad,
        total_glance_duration_offroad=summary.total_glance_duration_offroad,
        mean_glance_duration_offroad=summary.mean_glance_duration_offroad,
        long_glance_count=summary.long_glance_count,
        mean_speed=sequence_driving_context(sequence, driving),
    )


def build_timeline(
    sequence: Sequence,
    interactions: SequenceOf[InteractionEvent] = (),
    glances: SequenceOf[GlanceEvent] = (),
    driving: SequenceOf[DrivingSample] = (),
    margin: int = DEFAULT_TIMELINE_MARGIN_MS,
) -> SequenceTimeline:
    """Assemble the sequence-detail timeline over the padded sequence span.

    The window is [t_first - margin, t_last + margin], floored at the trip's
    earliest record so padding never extends before the trip began. Markers
    are the sequence's own interactions; lanes and the driving series are
    clipped or filtered to the window.
    """
    if margin < 0:
        raise ValueError(f"margin must be >= 0, got {margin}")
    earliest = min(
        [ev.t for ev in interactions[:1]]
        + [g.t_start for g in glances[:1]]
        + [s.t for s in driving[:1]]
        + [sequence.t_first]
    )
    t_lo = max(sequence.t_first - margin, earliest)
    t_hi = sequence.t_last + margin
    window = (t_lo, t_hi)

    lanes: dict[Aoi, list[tuple[int, int]]] = {aoi: [] for aoi in Aoi}
    for c in clip_glances_to_window(glances, window):
        lanes[c.aoi].append((c.clipped_start, c.clipped_duration))

    return SequenceTimeline(
        sequence_id=sequence.sequence_id,
        window=window,
        glance_lanes={aoi: tuple(entries) for aoi, entries in lanes.items()},
        driving_series=tuple(
            (s.t, s.speed, s.steering_angle) for s in driving if t_lo <= s.t <= t_hi
        ),
        interaction_markers=tuple(
            (ev.t, ev.element_id, ev.gesture.value) for ev in sequence.interactions
        ),
    )
