"""Shared domain types for touchscreen-telemetry flow analytics.

All types are immutable value objects; they can be shared freely across
threads. Timestamps are integer milliseconds since epoch throughout, so
interval arithmetic is exact. Calendar dates (trip metadata) are plain
``datetime.date`` values with no timezone logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Optional


class Gesture(str, Enum):
    """Closed vocabulary of touch gestures; unknown gestures are ingest errors."""

    TAP = "tap"
    DOUBLE_TAP = "double_tap"
    LONG_PRESS = "long_press"
    DRAG = "drag"
    SWIPE = "swipe"


class Aoi(str, Enum):
    """Gaze area of interest: the road, the center-stack touchscreen, or anything else."""

    ROAD = "road"
    CENTER_STACK = "center_stack"
    OTHER = "other"


#: Everything that is not the road counts as off-road for distraction metrics.
OFFROAD_AOIS = frozenset({Aoi.CENTER_STACK, Aoi.OTHER})


class MetricKind(str, Enum):
    """Per-sequence metrics selectable for flow comparison."""

    TIME_ON_TASK = "time_on_task"
    N_INTERACTIONS = "n_interactions"
    GLANCE_COUNT_OFFROAD = "glance_count_offroad"
    TOTAL_GLANCE_DURATION_OFFROAD = "total_glance_duration_offroad"
    MEAN_GLANCE_DURATION_OFFROAD = "mean_glance_duration_offroad"
    LONG_GLANCE_COUNT = "long_glance_count"
    MEAN_SPEED = "mean_speed"


@dataclass(frozen=True, slots=True)
class InteractionEvent:
    """One touchscreen interaction on a UI element within a trip."""

    trip_id: str
    t: int
    element_id: str
    gesture: Gesture
    screen_id: str

    def to_dict(self) -> dict:
        return {
            "trip_id": self.trip_id,
            "t": self.t,
            "element_id": self.element_id,
            "gesture": self.gesture.value,
            "screen_id": self.screen_id,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InteractionEvent":
        return cls(d["trip_id"], d["t"], d["element_id"], Gesture(d["gesture"]), d["screen_id"])


@dataclass(frozen=True, slots=True)
class GlanceEvent:
    """One gaze dwell on an area of interest, with start time and duration."""

    trip_id: str
    t_start: int
    duration: int
    aoi: Aoi

    @property
    def t_end(self) -> int:
        return self.t_start + self.duration

    def to_dict(self) -> dict:
        return {
            "trip_id": self.trip_id,
            "t_start": self.t_start,
            "duration": self.duration,
            "aoi": self.aoi.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GlanceEvent":
        return cls(d["trip_id"], d["t_start"], d["duration"], Aoi(d["aoi"]))


@dataclass(frozen=True, slots=True)
class DrivingSample:
    """One sample of driving context: speed in m/s, steering angle in degrees."""

    trip_id: str
    t: int
    speed: float
    steering_angle: float

    def to_dict(self) -> dict:
        return {
            "trip_id": self.trip_id,
            "t": self.t,
            "speed": self.speed,
            "steering_angle": self.steering_angle,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DrivingSample":
        return cls(d["trip_id"], d["t"], d["speed"], d["steering_angle"])


@dataclass(frozen=True, slots=True)
class TripMeta:
    """Per-trip vehicle and software context used for corpus filtering."""

    trip_id: str
    vehicle_id: str
    car_model: str
    software_version: str
    screen_size: str
    date: date

    def to_dict(self) -> dict:
        return {
            "trip_id": self.trip_id,
            "vehicle_id": self.vehicle_id,
            "car_model": self.car_model,
            "software_version": self.software_version,
            "screen_size": self.screen_size,
            "date": self.date.isoformat(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TripMeta":
        return cls(
            d["trip_id"],
            d["vehicle_id"],
            d["car_model"],
            d["software_version"],
            d["screen_size"],
            date.fromisoformat(d["date"]),
        )


@dataclass(frozen=True, slots=True)
class ConceptEntry:
    """Registry entry mapping a UI element identifier to human-readable info."""

    element_id: str
    label: str
    screen_id: str
    description: str

    def to_dict(self) -> dict:
        return {
            "element_id": self.element_id,
            "label": self.label,
            "screen_id": self.screen_id,
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConceptEntry":
        return cls(d["element_id"], d["label"], d["screen_id"], d["description"])


@dataclass(frozen=True, slots=True)
class TaskDefinition:
    """An analysis scope: the UI elements that open and close a task."""

    start_element: str
    end_element: str

    def __post_init__(self) -> None:
        if not self.start_element or not self.end_element:
            raise ValueError("task start and end elements must be nonempty")
        if self.start_element == self.end_element:
            raise ValueError("task start and end elements must differ")

    def to_dict(self) -> dict:
        return {"start_element": self.start_element, "end_element": self.end_element}

    @classmethod
    def from_dict(cls, d: dict) -> "TaskDefinition":
        return cls(d["start_element"], d["end_element"])


@dataclass(frozen=True, slots=True)
class Sequence:
    """One concrete execution of a task: the ordered interactions of one trip
    from a start-element interaction to the first subsequent end-element one.

    ``sequence_id`` is deterministic from content (trip id plus the index of
    the first interaction within the trip's time-sorted interaction list), so
    repeated analyses over the same snapshot yield stable drill-down links.
    """

    sequence_id: str
    trip_id: str
    interactions: tuple[InteractionEvent, ...]
    t_first: int
    t_last: int

    def to_dict(self) -> dict:
        return {
            "sequence_id": self.sequence_id,
            "trip_id": self.trip_id,
            "interactions": [ev.to_dict() for ev in self.interactions],
            "t_first": self.t_first,
            "t_last": self.t_last,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Sequence":
        return cls(
            d["sequence_id"],
            d["trip_id"],
            tuple(InteractionEvent.from_dict(e) for e in d["interactions"]),
            d["t_first"],
            d["t_last"],
        )


@dataclass(frozen=True, slots=True)
class Flow:
    """An equivalence class of sequences sharing the same ordered element path."""

    path: tuple[str, ...]
    sequences: tuple[Sequence, ...]

    def to_dict(self) -> dict:
        return {"path": list(self.path), "sequences": [s.to_dict() for s in self.sequences]}

    @classmethod
    def from_dict(cls, d: dict) -> "Flow":
        return cls(tuple(d["path"]), tuple(Sequence.from_dict(s) for s in d["sequences"]))


@dataclass(frozen=True, slots=True)
class FilterSpec:
    """Corpus- and flow-level filters applied to an analysis.

    Trip-level fields (car models, software versions, screen sizes, date
    range) narrow the corpus before extraction; ``min_support`` and ``top_n``
    narrow the flow table after aggregation.
    """

    car_models: Optional[frozenset[str]] = None
    software_versions: Optional[frozenset[str]] = None
    screen_sizes: Optional[frozenset[str]] = None
    date_range: Optional[tuple[date, date]] = None
    min_support: float = 0.0
    top_n: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.min_support <= 1.0:
            raise ValueError(f"min_support must be in [0, 1], got {self.min_support}")
        if self.date_range is not None and self.date_range[0] > self.date_range[1]:
            raise ValueError("date_range start must not be after its end")
        if self.top_n is not None and self.top_n <= 0:
            raise ValueError(f"top_n must be positive, got {self.top_n}")

    def to_dict(self) -> dict:
        return {
            "car_models": sorted(self.car_models) if self.car_models is not None else None,
            "software_versions": (
                sorted(self.software_versions) if self.software_versions is not None else None
            ),
            "screen_sizes": sorted(self.screen_sizes) if self.screen_sizes is not None else None,
            "date_range": (
                [self.date_range[0].isoformat(), self.date_range[1].isoformat()]
                if self.date_range is not None
                else None
            ),
            "min_support": self.min_support,
            "top_n": self.top_n,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FilterSpec":
        date_range = d.get("date_range")
        return cls(
            car_models=frozenset(d["car_models"]) if d.get("car_models") is not None else None,
            software_versions=(
                frozenset(d["software_versions"])
                if d.get("software_versions") is not None
                else None
            ),
            screen_sizes=(
                frozenset(d["screen_sizes"]) if d.get("screen_sizes") is not None else None
            ),
            date_range=(
                (date.fromisoformat(date_range[0]), date.fromisoformat(date_range[1]))
                if date_range is not None
                else None
            ),
            min_support=d.get("min_support", 0.0),
            top_n=d.get("top_n"),
        )


@dataclass(frozen=True, slots=True)
class Violation:
    """One data-quality finding for a trip; violations are data, not failures."""

    trip_id: str
    rule: str
    detail: str

    def to_dict(self) -> dict:
        return {"trip_id": self.trip_id, "rule": self.rule, "detail": self.detail}


def path_of(sequence: Sequence) -> tuple[str, ...]:
    """The ordered element-id path of a sequence; the identity key of its flow."""
    return tuple(ev.element_id for ev in sequence.interactions)


def sequence_violations(
    sequence: Sequence,
    task: TaskDefinition,
    *,
    require_start_exclusive: bool = True,
) -> list[str]:
    """Check the sequence invariant pack against a task; empty means valid.

    Start-exclusivity (the start element appears only at position 0) is a
    consequence of restart-on-start matching; extraction runs that disable
    restarting legitimately accumulate interior start taps, so callers can
    relax that single rule.
    """
    problems: list[str] = []
    evs = sequence.interactions
    if len(evs) < 2:
        problems.append("sequence must contain at least two interactions")
        return problems
    if any(evs[i].t >= evs[i + 1].t for i in range(len(evs) - 1)):
        problems.append("interactions must be strictly ordered by timestamp")
    if evs[0].element_id != task.start_element:
        problems.append("first interaction must be on the task start element")
    if evs[-1].element_id != task.end_element:
        problems.append("last interaction must be on the task end element")
    if require_start_exclusive and any(
        ev.element_id == task.start_element for ev in evs[1:]
    ):
        problems.append("start element may only occur at position 0")
    if any(ev.element_id == task.end_element for ev in evs[:-1]):
        problems.append("end element may only occur at the last position")
    if sequence.t_first != evs[0].t:
        problems.append("t_first must equal the first interaction's timestamp")
    if sequence.t_last != evs[-1].t:
        problems.append("t_last must equal the last interaction's timestamp")
    if any(ev.trip_id != sequence.trip_id for ev in evs):
        problems.append("all interactions must belong to the sequence's trip")
    return problems


def validate_trip(
    trip_id: str,
    interactions: list[InteractionEvent] | tuple[InteractionEvent, ...] = (),
    glances: list[GlanceEvent] | tuple[GlanceEvent, ...] = (),
    driving: list[DrivingSample] | tuple[DrivingSample, ...] = (),
) -> list[Violation]:
    """Check one trip's event streams against the type invariants.

    Returns an empty list iff every record is well-formed and the trip's
    glances are non-overlapping. Each violation names the offending record
    and the rule it breaks.
    """
    violations: list[Violation] = []

    for ev in interactions:
        if ev.trip_id != trip_id:
            violations.append(Violation(trip_id, "trip_id mismatch", f"interaction at t={ev.t}"))
        if ev.t < 0:
            violations.append(Violation(trip_id, "t >= 0", f"interaction at t={ev.t}"))
        if not ev.element_id:
            violations.append(
                Violation(trip_id, "element_id nonempty", f"interaction at t={ev.t}")
            )

    for g in glances:
        if g.trip_id != trip_id:
            violations.append(
                Violation(trip_id, "trip_id mismatch", f"glance at t_start={g.t_start}")
            )
        if g.duration <= 0:
            violations.append(
                Violation(
                    trip_id, "duration > 0", f"glance at t_start={g.t_start} duration={g.duration}"
                )
            )
    ordered = sorted(glances, key=lambda g: g.t_start)
    for prev, cur in zip(ordered, ordered[1:]):
        if prev.t_end > cur.t_start:
            violations.append(
                Violation(
                    trip_id,
                    "glance overlap",
                    f"glance {prev.t_start}-{prev.t_end} overlaps glance at {cur.t_start}",
                )
            )

    for s in driving:
        if s.trip_id != trip_id:
            violations.append(Violation(trip_id, "trip_id mismatch", f"driving sample at t={s.t}"))
        if s.speed < 0:
            violations.append(
                Violation(trip_id, "speed >= 0", f"driving sample at t={s.t} speed={s.speed}")
            )

    return violations
