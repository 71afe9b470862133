"""Task-scoped sequence extraction from trip interaction streams.

A task is defined by its start and end UI elements. Matching is a single
left-to-right scan per trip: a candidate opens on the start element,
accumulates interactions, and closes on the first end element. Re-tapping
the start element restarts the candidate (configurable), and an optional
maximum gap between consecutive interactions discards stalled candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence as SequenceOf

from .ingest import Corpus
from .model import (
    FilterSpec,
    InteractionEvent,
    Sequence,
    TaskDefinition,
    TripMeta,
)


class InvalidRecordingError(ValueError):
    """A recorded element list cannot define a task."""


@dataclass(frozen=True, slots=True)
class ExtractionOptions:
    """Matching knobs: restart on re-entry (default on) and a stall timeout."""

    max_gap: Optional[int] = None
    restart_on_start: bool = True

    def __post_init__(self) -> None:
        if self.max_gap is not None and self.max_gap <= 0:
            raise ValueError(f"max_gap must be positive, got {self.max_gap}")

    def to_dict(self) -> dict:
        return {"max_gap": self.max_gap, "restart_on_start": self.restart_on_start}

    @classmethod
    def from_dict(cls, d: dict) -> "ExtractionOptions":
        return cls(
            max_gap=d.get("max_gap"),
            restart_on_start=d.get("restart_on_start", True),
        )


@dataclass(frozen=True, slots=True)
class SequenceSet:
    """All sequences matching one task over a (filtered) corpus."""

    task: TaskDefinition
    sequences: tuple[Sequence, ...]
    trips_scanned: int
    trips_matched: int


def task_from_recording(recording: SequenceOf[str]) -> TaskDefinition:
    """Derive a task from a recorded element list: first entry starts, last ends."""
    if len(recording) < 2:
        raise InvalidRecordingError(
            f"recording must contain at least two interactions, got {len(recording)}"
        )
    if recording[0] == recording[-1]:
        raise InvalidRecordingError(
            f'recording must start and end on different elements, both are "{recording[0]}"'
        )
    return TaskDefinition(start_element=recording[0], end_element=recording[-1])


def sequence_id_for(trip_id: str, start_index: int) -> str:
    """Deterministic sequence identity: the trip plus the opening interaction's
    index, joined with a URL-safe separator."""
    return f"{trip_id}:{start_index}"


def match_sequences_in_trip(
    interactions: SequenceOf[InteractionEvent],
    task: TaskDefinition,
    options: ExtractionOptions = ExtractionOptions(),
) -> list[Sequence]:
    """Scan one trip's time-sorted interactions for task executions.

    Emitted sequences are disjoint, ordered, and each is a contiguous run of
    the trip's interactions. Candidates still open at trip end are dropped.
    """
    sequences: list[Sequence] = []
    open_at: Optional[int] = None
    accumulated: list[InteractionEvent] = []

    for i, ev in enumerate(interactions):
        if (
            open_at is not None
            and options.max_gap is not None
            and ev.t - accumulated[-1].t > options.max_gap
        ):
            open_at = None
            accumulated = []
        if open_at is None:
            if ev.element_id == task.start_element:
                open_at = i
                accumulated = [ev]
            continue
        if ev.element_id == task.start_element and options.restart_on_start:
            open_at = i
            accumulated = [ev]
        elif ev.element_id == task.end_element:
            accumulated.append(ev)
            sequences.append(
                Sequence(
                    sequence_id=sequence_id_for(ev.trip_id, open_at),
                    trip_id=ev.trip_id,
                    interactions=tuple(accumulated),
                    t_first=accumulated[0].t,
                    t_last=ev.t,
                )
            )
            open_at = None
            accumulated = []
        else:
            accumulated.append(ev)

    return sequences


def trip_passes_filters(meta: TripMeta, filters: FilterSpec) -> bool:
    """Trip-level filter predicate over vehicle and software context."""
    if filters.car_models is not None and meta.car_model not in filters.car_models:
        return False
    if (
        filters.software_versions is not None
        and meta.software_version not in filters.software_versions
    ):
        return False
    if filters.screen_sizes is not None and meta.screen_size not in filters.screen_sizes:
        return False
    if filters.date_range is not None:
        lo, hi = filters.date_range
        if not lo <= meta.date <= hi:
            return False
    return True


def extract_sequences(
    corpus: Corpus,
    task: TaskDefinition,
    filters: FilterSpec = FilterSpec(),
    options: ExtractionOptions = ExtractionOptions(),
) -> SequenceSet:
    """Extract all task executions from the corpus trips passing the filters.

    min_support and top_n are flow-level filters and are not applied here.
    Trips are scanned in trip-id order, so the result is deterministic.
    """
    sequences: list[Sequence] = []
    trips_scanned = 0
    trips_matched = 0
    for trip_id in sorted(corpus.trips):
        if not trip_passes_filters(corpus.trips[trip_id], filters):
            continue
        trips_scanned += 1
        found = match_sequences_in_trip(corpus.interactions.get(trip_id, ()), task, options)
        if found:
            trips_matched += 1
            sequences.extend(found)
    return SequenceSet(
        task=task,
        sequences=tuple(sequences),
        trips_scanned=trips_scanned,
        trips_matched=trips_matched,
    )
