"""Event-log parsing and corpus snapshot assembly.

The log format is newline-delimited JSON, one record per line, with a
"type" field selecting the record schema. One file may mix record types.
Parsing is strict: malformed or unknown records abort the load with a
located error rather than being skipped, while semantically invalid trips
(e.g. overlapping glances) are excluded whole and reported.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional, Union

from .model import (
    Aoi,
    ConceptEntry,
    DrivingSample,
    Gesture,
    GlanceEvent,
    InteractionEvent,
    TripMeta,
    Violation,
    validate_trip,
)

Record = Union[InteractionEvent, GlanceEvent, DrivingSample, TripMeta]


class IngestError(Exception):
    """Base for located ingest failures; carries source file and line number."""

    def __init__(self, message: str, source: str = "", lineno: int = 0):
        self.message = message
        self.source = source
        self.lineno = lineno
        where = f"{source}:{lineno}: " if source else ""
        super().__init__(f"{where}{message}")


class MalformedRecordError(IngestError):
    """The line is not a JSON object."""


class UnsupportedRecordError(IngestError):
    """The record's "type" tag is not one of the known record kinds."""


class UnsupportedValueError(IngestError):
    """A closed-vocabulary field (gesture, aoi) holds an unknown value."""


class SchemaError(IngestError):
    """A required field is missing, mistyped, or violates a field invariant."""


class LoadError(Exception):
    """A corpus could not be assembled (unreadable file, bad concept database)."""


def _require(record: dict, field: str, kinds, source: str, lineno: int):
    if field not in record:
        raise SchemaError(f'missing field "{field}"', source, lineno)
    value = record[field]
    # bool is an int subclass; never a valid stand-in for a number here.
    if isinstance(value, bool) or not isinstance(value, kinds):
        raise SchemaError(f'field "{field}" has wrong type', source, lineno)
    return value


def parse_event_line(line: str, source: str = "", lineno: int = 0) -> Record:
    """Parse one log line into its typed record.

    Raises MalformedRecordError for syntax, UnsupportedRecordError for an
    unknown "type" tag, UnsupportedValueError for out-of-vocabulary gestures
    or areas of interest, and SchemaError for missing or invalid fields.
    """
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecordError(f"invalid JSON: {exc.msg}", source, lineno) from exc
    if not isinstance(record, dict):
        raise MalformedRecordError("record must be a JSON object", source, lineno)

    kind = record.get("type")
    if kind is None:
        raise SchemaError('missing field "type"', source, lineno)

    if kind == "interaction":
        trip_id = _require(record, "trip_id", str, source, lineno)
        t = _require(record, "t", int, source, lineno)
        element_id = _require(record, "element_id", str, source, lineno)
        gesture_raw = _require(record, "gesture", str, source, lineno)
        screen_id = _require(record, "screen_id", str, source, lineno)
        if t < 0:
            raise SchemaError("t >= 0", source, lineno)
        if not element_id:
            raise SchemaError("element_id nonempty", source, lineno)
        try:
            gesture = Gesture(gesture_raw)
        except ValueError:
            raise UnsupportedValueError(f'unsupported gesture "{gesture_raw}"', source, lineno)
        return InteractionEvent(trip_id, t, element_id, gesture, screen_id)

    if kind == "glance":
        trip_id = _require(record, "trip_id", str, source, lineno)
        t_start = _require(record, "t_start", int, source, lineno)
        duration = _require(record, "duration", int, source, lineno)
        aoi_raw = _require(record, "aoi", str, source, lineno)
        if t_start < 0:
            raise SchemaError("t_start >= 0", source, lineno)
        if duration <= 0:
            raise SchemaError("duration > 0", source, lineno)
        try:
            aoi = Aoi(aoi_raw)
        except ValueError:
            raise UnsupportedValueError(f'unsupported aoi "{aoi_raw}"', source, lineno)
        return GlanceEvent(trip_id, t_start, duration, aoi)

    if kind == "driving":
        trip_id = _require(record, "trip_id", str, source, lineno)
        t = _require(record, "t", int, source, lineno)
        speed = _require(record, "speed", (int, float), source, lineno)
        steering_angle = _require(record, "steering_angle", (int, float), source, lineno)
        if t < 0:
            raise SchemaError("t >= 0", source, lineno)
        if speed < 0:
            raise SchemaError("speed >= 0", source, lineno)
        return DrivingSample(trip_id, t, float(speed), float(steering_angle))

    if kind == "trip":
        trip_id = _require(record, "trip_id", str, source, lineno)
        vehicle_id = _require(record, "vehicle_id", str, source, lineno)
        car_model = _require(record, "car_model", str, source, lineno)
        software_version = _require(record, "software_version", str, source, lineno)
        screen_size = _require(record, "screen_size", str, source, lineno)
        date_raw = _require(record, "date", str, source, lineno)
        try:
            meta = TripMeta.from_dict(
                {
                    "trip_id": trip_id,
                    "vehicle_id": vehicle_id,
                    "car_model": car_model,
                    "software_version": software_version,
                    "screen_size": screen_size,
                    "date": date_raw,
                }
            )
        except ValueError:
            raise SchemaError(f'field "date" is not a calendar date: "{date_raw}"', source, lineno)
        return meta

    raise UnsupportedRecordError(f'unknown record type "{kind}"', source, lineno)


def load_concepts(path: Union[str, Path]) -> dict[str, ConceptEntry]:
    """Load the concept database: a JSON array of UI element descriptors."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise LoadError(f"cannot read concept database {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise LoadError(f"concept database {path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(raw, list):
        raise LoadError(f"concept database {path} must be a JSON array")
    concept: dict[str, ConceptEntry] = {}
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise LoadError(f"concept database {path} entry {i} must be an object")
        try:
            parsed = ConceptEntry.from_dict(entry)
        except KeyError as exc:
            raise LoadError(f"concept database {path} entry {i} is missing field {exc}") from exc
        if parsed.element_id in concept:
            raise LoadError(
                f'concept database {path} has duplicate element_id "{parsed.element_id}"'
            )
        concept[parsed.element_id] = parsed
    return concept


@dataclass(frozen=True, slots=True)
class TripExclusion:
    """A trip dropped during corpus assembly, with the violations that caused it."""

    trip_id: str
    violations: tuple[Violation, ...]

    def to_dict(self) -> dict:
        return {
            "trip_id": self.trip_id,
            "violations": [v.to_dict() for v in self.violations],
        }


@dataclass(frozen=True, slots=True)
class Corpus:
    """An immutable snapshot of all valid trips and their event streams.

    Per-trip event tuples are sorted by timestamp (ties keep file order).
    snapshot_id increases strictly across snapshots within a process, so
    stale drill-down references can be detected after a reload.
    """

    trips: Mapping[str, TripMeta]
    interactions: Mapping[str, tuple[InteractionEvent, ...]]
    glances: Mapping[str, tuple[GlanceEvent, ...]]
    driving: Mapping[str, tuple[DrivingSample, ...]]
    concept: Mapping[str, ConceptEntry]
    snapshot_id: int
    exclusions: tuple[TripExclusion, ...] = ()

    def __post_init__(self) -> None:
        for name in ("trips", "interactions", "glances", "driving", "concept"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))


@dataclass(frozen=True, slots=True)
class DashboardKpis:
    """Corpus-level counts shown before any task is defined."""

    trip_count: int
    interaction_count: int
    vehicle_count: int
    glance_hours: float
    date_min: Optional[str]
    date_max: Optional[str]

    def to_dict(self) -> dict:
        return {
            "trip_count": self.trip_count,
            "interaction_count": self.interaction_count,
            "vehicle_count": self.vehicle_count,
            "glance_hours": self.glance_hours,
            "date_min": self.date_min,
            "date_max": self.date_max,
        }


_snapshot_lock = threading.Lock()
_snapshot_last = 0


def next_snapshot_id() -> int:
    """Process-wide monotonically increasing snapshot identifier."""
    global _snapshot_last
    with _snapshot_lock:
        _snapshot_last += 1
        return _snapshot_last


def load_corpus(
    paths: list[Union[str, Path]],
    concept_path: Union[str, Path],
) -> Corpus:
    """Parse event-log files into a validated corpus snapshot.

    The path list is normalized (sorted by name) before reading, so the same
    set of files yields identical corpus content regardless of argument
    order. Trips failing validation, lacking a trip record, or defined twice
    are excluded whole and listed in the snapshot's exclusions. Zero valid
    trips is an empty corpus, not an error.
    """
    concept = load_concepts(concept_path)

    metas: dict[str, TripMeta] = {}
    duplicate_meta: dict[str, Violation] = {}
    interactions: dict[str, list[InteractionEvent]] = {}
    glances: dict[str, list[GlanceEvent]] = {}
    driving: dict[str, list[DrivingSample]] = {}

    for path in sorted(Path(p) for p in paths):
        source = str(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise LoadError(f"cannot read event log {path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            record = parse_event_line(line, source, lineno)
            if isinstance(record, TripMeta):
                if record.trip_id in metas:
                    duplicate_meta[record.trip_id] = Violation(
                        record.trip_id, "trip_id unique", f"duplicate trip record in {source}"
                    )
                else:
                    metas[record.trip_id] = record
            elif isinstance(record, InteractionEvent):
                interactions.setdefault(record.trip_id, []).append(record)
            elif isinstance(record, GlanceEvent):
                glances.setdefault(record.trip_id, []).append(record)
            else:
                driving.setdefault(record.trip_id, []).append(record)

    exclusions: list[TripExclusion] = []
    excluded: set[str] = set()

    for trip_id, violation in sorted(duplicate_meta.items()):
        exclusions.append(TripExclusion(trip_id, (violation,)))
        excluded.add(trip_id)

    event_trip_ids = set(interactions) | set(glances) | set(driving)
    for trip_id in sorted(event_trip_ids - set(metas)):
        exclusions.append(
            TripExclusion(
                trip_id,
                (Violation(trip_id, "trip record exists", "events reference an unknown trip"),),
            )
        )
        excluded.add(trip_id)

    # Stable sorts: records parsed earlier (file order) stay first on equal t.
    for trip_id in interactions:
        interactions[trip_id].sort(key=lambda ev: ev.t)
    for trip_id in glances:
        glances[trip_id].sort(key=lambda g: g.t_start)
    for trip_id in driving:
        driving[trip_id].sort(key=lambda s: s.t)

    for trip_id in sorted(metas):
        if trip_id in excluded:
            continue
        violations = validate_trip(
            trip_id,
            interactions.get(trip_id, ()),
            glances.get(trip_id, ()),
            driving.get(trip_id, ()),
        )
        if violations:
            exclusions.append(TripExclusion(trip_id, tuple(violations)))
            excluded.add(trip_id)

    kept = {trip_id: meta for trip_id, meta in metas.items() if trip_id not in excluded}
    return Corpus(
        trips=kept,
        interactions={t: tuple(interactions.get(t, ())) for t in kept},
        glances={t: tuple(glances.get(t, ())) for t in kept},
        driving={t: tuple(driving.get(t, ())) for t in kept},
        concept=concept,
        snapshot_id=next_snapshot_id(),
        exclusions=tuple(exclusions),
    )


def discover_data_dir(data_dir: Union[str, Path]) -> tuple[list[Path], Path]:
    """Resolve a data directory into its event-log paths and concept database.

    Event logs are every *.ndjson file; the concept database is concept.json.
    """
    data_dir = Path(data_dir)
    if not data_dir.is_dir():
        raise LoadError(f"data directory {data_dir} does not exist")
    concept_path = data_dir / "concept.json"
    if not concept_path.is_file():
        raise LoadError(f"concept database {concept_path} does not exist")
    return sorted(data_dir.glob("*.ndjson")), concept_path


def corpus_from_dir(data_dir: Union[str, Path]) -> Corpus:
    """load_corpus over the conventional data-directory layout."""
    paths, concept_path = discover_data_dir(data_dir)
    return load_corpus(list(paths), concept_path)


def corpus_kpis(corpus: Corpus) -> DashboardKpis:
    """Headline counts over a corpus: trips, interactions, vehicles, glance hours."""
    trip_count = len(corpus.trips)
    interaction_count = sum(len(evs) for evs in corpus.interactions.values())
    vehicle_count = len({meta.vehicle_id for meta in corpus.trips.values()})
    glance_ms = sum(g.duration for gs in corpus.glances.values() for g in gs)
    dates = sorted(meta.date for meta in corpus.trips.values())
    return DashboardKpis(
        trip_count=trip_count,
        interaction_count=interaction_count,
        vehicle_count=vehicle_count,
        glance_hours=glance_ms / 3.6e6,
        date_min=dates[0].isoformat() if dates else None,
        date_max=dates[-1].isoformat() if dates else None,
    )
