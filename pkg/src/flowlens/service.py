"""HTTP service exposing the analysis engine over JSON.

Requests never see a half-loaded corpus: each handler grabs the current
snapshot reference once and computes everything from it, while reloads
build a complete new snapshot under a single-writer lock and swap it in
atomically. Responses embed the snapshot id, and sequence ids handed out
for drill-down encode it too, so stale links fail with 410 instead of
silently resolving against different data.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional, Union

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .extraction import (
    ExtractionOptions,
    InvalidRecordingError,
    extract_sequences,
    task_from_recording,
)
from .flows import (
    IncompleteMetricsError,
    apply_flow_filters,
    boxplot_stats,
    build_sankey,
    flow_statistics,
    group_into_flows,
)
from .glance import (
    DEFAULT_TIMELINE_MARGIN_MS,
    build_timeline,
    compute_sequence_metrics,
    metric_value,
)
from .ingest import Corpus, LoadError, corpus_kpis, load_corpus
from .model import FilterSpec, MetricKind, Sequence, TaskDefinition


class SnapshotStore:
    """Holds the served corpus; reloads are serialized and atomic.

    Readers take the `corpus` reference without locking (attribute reads are
    atomic); they keep whatever snapshot they started with. The lock only
    serializes writers, and a failed reload leaves the old snapshot in place.
    """

    def __init__(self, data_dir: Union[str, Path], concept_path: Union[str, Path]):
        self.data_dir = Path(data_dir)
        self.concept_path = Path(concept_path)
        self.corpus: Optional[Corpus] = None
        self._reload_lock = threading.Lock()

    def reload(self) -> Corpus:
        with self._reload_lock:
            if not self.data_dir.is_dir():
                raise LoadError(f"data directory {self.data_dir} does not exist")
            paths = sorted(self.data_dir.glob("*.ndjson"))
            corpus = load_corpus(list(paths), self.concept_path)
            self.corpus = corpus
            return corpus


def wire_sequence_id(snapshot_id: int, sequence: Sequence) -> str:
    """Externalize a sequence id: snapshot, interaction count, then core id."""
    return f"{snapshot_id}.{len(sequence.interactions)}.{sequence.sequence_id}"


def parse_wire_sequence_id(wire_id: str) -> Optional[tuple[int, int, str, int]]:
    """Split a wire id into (snapshot_id, length, trip_id, start_index), or None."""
    parts = wire_id.split(".", 2)
    if len(parts) != 3:
        return None
    snapshot_raw, length_raw, core = parts
    if not snapshot_raw.isdigit() or not length_raw.isdigit():
        return None
    trip_id, sep, start_raw = core.rpartition(":")
    if not sep or not trip_id or not start_raw.isdigit():
        return None
    return int(snapshot_raw), int(length_raw), trip_id, int(start_raw)


def _current_corpus(store: SnapshotStore) -> Corpus:
    corpus = store.corpus
    if corpus is None:
        raise HTTPException(status_code=503, detail="service not ready: no snapshot loaded")
    return corpus


def _resolve_task(body: dict, corpus: Corpus) -> TaskDefinition:
    task_raw = body.get("task")
    recording = body.get("recording")
    if (task_raw is None) == (recording is None):
        raise HTTPException(
            status_code=422, detail="exactly one of task or recording must be given"
        )
    try:
        if task_raw is not None:
            if not isinstance(task_raw, dict):
                raise HTTPException(status_code=422, detail="task must be an object")
            try:
                task = TaskDefinition.from_dict(task_raw)
            except KeyError as exc:
                raise HTTPException(status_code=422, detail=f"task is missing field {exc}")
        else:
            if not isinstance(recording, list) or not all(
                isinstance(e, str) for e in recording
            ):
                raise HTTPException(
                    status_code=422, detail="recording must be a list of element ids"
                )
            task = task_from_recording(recording)
    except (InvalidRecordingError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    for element in (task.start_element, task.end_element):
        if element not in corpus.concept:
            raise HTTPException(status_code=422, detail=f'unknown element "{element}"')
    return task


def _resolve_filters(body: dict) -> FilterSpec:
    raw = body.get("filters")
    if raw is None:
        return FilterSpec()
    if not isinstance(raw, dict):
        raise HTTPException(status_code=422, detail="filters must be an object")
    try:
        return FilterSpec.from_dict(raw)
    except (ValueError, TypeError) as exc:
        raise HTTPException(status_code=422, detail=f"invalid filters: {exc}")


def _resolve_options(body: dict) -> ExtractionOptions:
    raw = body.get("options")
    if raw is None:
        return ExtractionOptions()
    if not isinstance(raw, dict):
        raise HTTPException(status_code=422, detail="options must be an object")
    try:
        return ExtractionOptions.from_dict(raw)
    except (ValueError, TypeError) as exc:
        raise HTTPException(status_code=422, detail=f"invalid options: {exc}")


def create_app(
    data_dir: Union[str, Path],
    concept_path: Union[str, Path],
    eager: bool = True,
) -> FastAPI:
    """Build the service over one data directory and concept database.

    With eager=True the first snapshot is loaded immediately and load errors
    surface at startup; otherwise the service answers 503 until the first
    successful reload.
    """
    app = FastAPI(title="flowlens")
    # The web client is served as static files from wherever is convenient,
    # so cross-origin reads must be allowed. The API is read-mostly and
    # unauthenticated; the admin endpoint is protected by deployment, not
    # by origin checks.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SnapshotStore(data_dir, concept_path)
    app.state.store = store
    if eager:
        store.reload()

    @app.get("/kpis")
    def get_kpis() -> JSONResponse:
        corpus = _current_corpus(store)
        return JSONResponse(
            {"snapshot_id": corpus.snapshot_id, **corpus_kpis(corpus).to_dict()}
        )

    @app.get("/elements")
    def get_elements() -> JSONResponse:
        corpus = _current_corpus(store)
        entries = sorted(corpus.concept.values(), key=lambda e: e.element_id)
        return JSONResponse(
            {
                "snapshot_id": corpus.snapshot_id,
                "elements": [e.to_dict() for e in entries],
            }
        )

    @app.post("/analysis")
    def post_analysis(body: dict = Body(...)) -> JSONResponse:
        corpus = _current_corpus(store)
        task = _resolve_task(body, corpus)
        filters = _resolve_filters(body)
        options = _resolve_options(body)

        sequence_set = extract_sequences(corpus, task, filters, options)
        stats = flow_statistics(group_into_flows(sequence_set))
        filtered = apply_flow_filters(stats, filters)
        return JSONResponse(
            {
                "snapshot_id": corpus.snapshot_id,
                "task": task.to_dict(),
                "flow_table": [fs.to_dict() for fs in filtered],
                "sankey": build_sankey(filtered).to_dict(),
                "totals": {
                    "sequences_matched": len(sequence_set.sequences),
                    "trips_scanned": sequence_set.trips_scanned,
                },
            }
        )

    @app.post("/analysis/compare")
    def post_compare(body: dict = Body(...)) -> JSONResponse:
        corpus = _current_corpus(store)
        task = _resolve_task(body, corpus)
        filters = _resolve_filters(body)
        options = _resolve_options(body)

        metric_raw = body.get("metric")
        try:
            metric = MetricKind(metric_raw)
        except ValueError:
            raise HTTPException(status_code=422, detail=f'unknown metric "{metric_raw}"')
        paths_raw = body.get("paths")
        if (
            not isinstance(paths_raw, list)
            or not paths_raw
            or not all(
                isinstance(p, list) and all(isinstance(e, str) for e in p) for p in paths_raw
            )
        ):
            raise HTTPException(
                status_code=422, detail="paths must be a nonempty list of element-id lists"
            )
        selected_paths = [tuple(p) for p in paths_raw]

        sequence_set = extract_sequences(corpus, task, filters, options)
        flows = group_into_flows(sequence_set)
        filtered = apply_flow_filters(flow_statistics(flows), filters)
        visible = {fs.path: fs for fs in filtered}
        for path in selected_paths:
            if path not in visible:
                raise HTTPException(
                    status_code=422,
                    detail=f"unknown selected path {list(path)}",
                )

        flows_by_path = {flow.path: flow for flow in flows}
        selected_flows = [flows_by_path[path] for path in selected_paths]
        wire_ids: dict[str, str] = {}
        values: dict[str, float] = {}
        for flow in selected_flows:
            for seq in flow.sequences:
                wire_ids[seq.sequence_id] = wire_sequence_id(corpus.snapshot_id, seq)
                metrics = compute_sequence_metrics(
                    seq,
                    corpus.glances.get(seq.trip_id, ()),
                    corpus.driving.get(seq.trip_id, ()),
                )
                value = metric_value(metrics, metric)
                if value is not None:
                    values[seq.sequence_id] = value
        try:
            plots = boxplot_stats(selected_flows, metric, values)
        except IncompleteMetricsError as exc:
            raise HTTPException(
                status_code=422,
                detail=(
                    f'metric "{exc.metric.value}" is undefined for sequence '
                    f'"{wire_ids[exc.sequence_id]}"'
                ),
            )
        return JSONResponse(
            {
                "snapshot_id": corpus.snapshot_id,
                "task": task.to_dict(),
                "metric": metric.value,
                "sankey": build_sankey([visible[path] for path in selected_paths]).to_dict(),
                "box_plots": [bp.to_dict(id_map=wire_ids.__getitem__) for bp in plots],
            }
        )

    @app.get("/sequence/{sequence_id}")
    def get_sequence(
        sequence_id: str,
        margin: int = Query(DEFAULT_TIMELINE_MARGIN_MS, ge=0),
    ) -> JSONResponse:
        corpus = _current_corpus(store)
        parsed = parse_wire_sequence_id(sequence_id)
        if parsed is None:
            raise HTTPException(status_code=404, detail=f'unknown sequence "{sequence_id}"')
        snapshot_id, length, trip_id, start = parsed
        if snapshot_id != corpus.snapshot_id:
            raise HTTPException(
                status_code=410,
                detail=f"sequence belongs to snapshot {snapshot_id}, "
                f"current is {corpus.snapshot_id}",
            )
        interactions = corpus.interactions.get(trip_id)
        if interactions is None or length < 2 or start + length > len(interactions):
            raise HTTPException(status_code=404, detail=f'unknown sequence "{sequence_id}"')
        events = interactions[start : start + length]
        sequence = Sequence(
            sequence_id=f"{trip_id}:{start}",
            trip_id=trip_id,
            interactions=events,
            t_first=events[0].t,
            t_last=events[-1].t,
        )
        glances = corpus.glances.get(trip_id, ())
        driving = corpus.driving.get(trip_id, ())
        metrics = compute_sequence_metrics(sequence, glances, driving).to_dict()
        timeline = build_timeline(sequence, interactions, glances, driving, margin).to_dict()
        metrics["sequence_id"] = sequence_id
        timeline["sequence_id"] = sequence_id
        return JSONResponse(
            {
                "snapshot_id": corpus.snapshot_id,
                "sequence_id": sequence_id,
                "trip_id": trip_id,
                "metrics": metrics,
                "timeline": timeline,
            }
        )

    @app.post("/admin/reload")
    def post_reload() -> JSONResponse:
        try:
            corpus = store.reload()
        except LoadError as exc:
            return JSONResponse(status_code=500, content={"error": str(exc)})
        return JSONResponse(
            {
                "snapshot_id": corpus.snapshot_id,
                "trip_count": len(corpus.trips),
                "exclusions": [e.to_dict() for e in corpus.exclusions],
            }
        )

    return app
