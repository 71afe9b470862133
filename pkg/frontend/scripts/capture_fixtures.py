"""Regenerate the HTTP fixtures in test/fixtures from an in-process service.

The corpus is a small hand-built set of navigation-task trips with known
flow shares and one sequence containing a 2.7 s center-stack glance. The
captured JSON bodies are committed so the TypeScript tests run without a
Python toolchain; rerun this script only when the service wire format
changes.

Usage: python3 scripts/capture_fixtures.py   (from the frontend directory)
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from flowlens.service import create_app

FIXTURES = Path(__file__).resolve().parents[1] / "test" / "fixtures"

TASK = {"start_element": "NAV_HOME", "end_element": "LETS_GO"}

CONCEPT = [
    {"element_id": "NAV_HOME", "label": "Navigation", "screen_id": "HOME",
     "description": "Opens the navigation screen"},
    {"element_id": "MEDIA_HOME", "label": "Media", "screen_id": "HOME",
     "description": "Opens the media screen"},
    {"element_id": "SEARCH_FIELD", "label": "Destination search", "screen_id": "NAV",
     "description": "Free-text destination entry"},
    {"element_id": "RECENT_DEST", "label": "Recent destinations", "screen_id": "NAV",
     "description": "List of previously routed destinations"},
    {"element_id": "LETS_GO", "label": "Let's Go", "screen_id": "NAV",
     "description": "Starts route guidance"},
    {"element_id": "END_GUIDANCE", "label": "End guidance", "screen_id": "GUIDANCE",
     "description": "Stops the active route"},
    {"element_id": "PLAY_PAUSE", "label": "Play / Pause", "screen_id": "MEDIA",
     "description": "Toggles playback"},
    {"element_id": "NEXT_TRACK", "label": "Next track", "screen_id": "MEDIA",
     "description": "Skips to the next track"},
    {"element_id": "BACK_HOME", "label": "Back", "screen_id": "MEDIA",
     "description": "Returns to the home screen"},
]


def trip(trip_id: str, car_model: str, version: str, date: str) -> dict:
    return {
        "type": "trip",
        "trip_id": trip_id,
        "vehicle_id": f"V-{trip_id}",
        "car_model": car_model,
        "software_version": version,
        "screen_size": '12"',
        "date": date,
    }


def tap(trip_id: str, t: int, element_id: str, screen_id: str) -> dict:
    return {"type": "interaction", "trip_id": trip_id, "t": t,
            "element_id": element_id, "gesture": "tap", "screen_id": screen_id}


def glance(trip_id: str, t_start: int, duration: int, aoi: str) -> dict:
    return {"type": "glance", "trip_id": trip_id, "t_start": t_start,
            "duration": duration, "aoi": aoi}


def drive(trip_id: str, t: int, speed: float, steering: float) -> dict:
    return {"type": "driving", "trip_id": trip_id, "t": t,
            "speed": speed, "steering_angle": steering}


def build_corpus(root: Path) -> None:
    root.mkdir(parents=True, exist_ok=True)
    trips = [
        trip("T1", "sedan", "2.4.0", "2026-05-11"),
        trip("T2", "sedan", "2.4.0", "2026-05-12"),
        trip("T3", "suv", "2.4.1", "2026-05-13"),
        trip("T4", "suv", "2.4.1", "2026-05-14"),
        trip("T5", "sedan", "2.4.0", "2026-05-15"),
        trip("T6", "suv", "2.4.1", "2026-05-16"),
    ]
    events: list[dict] = []

    # T1: search flow with a 2700 ms center-stack glance inside the sequence.
    events += [
        tap("T1", 10000, "NAV_HOME", "HOME"),
        tap("T1", 10400, "SEARCH_FIELD", "NAV"),
        tap("T1", 13500, "LETS_GO", "NAV"),
        glance("T1", 8500, 1500, "road"),
        glance("T1", 10500, 2700, "center_stack"),
        glance("T1", 13300, 1200, "road"),
    ]
    events += [drive("T1", t, 12.0 + (t - 10000) / 2000.0, (-1.0) ** (t // 500))
               for t in range(10000, 14001, 500)]

    # T2: same path, short glance only.
    events += [
        tap("T2", 20000, "NAV_HOME", "HOME"),
        tap("T2", 20600, "SEARCH_FIELD", "NAV"),
        tap("T2", 22000, "LETS_GO", "NAV"),
        glance("T2", 20600, 800, "center_stack"),
        glance("T2", 21500, 900, "road"),
    ]
    events += [drive("T2", t, 9.5, 0.4) for t in range(20000, 22501, 500)]

    # T3: recent-destinations variant.
    events += [
        tap("T3", 30000, "NAV_HOME", "HOME"),
        tap("T3", 30700, "RECENT_DEST", "NAV"),
        tap("T3", 31600, "LETS_GO", "NAV"),
        glance("T3", 30700, 600, "center_stack"),
    ]
    events += [drive("T3", t, 16.0, -0.2) for t in range(30000, 32001, 500)]

    # T4: direct start-to-go flow.
    events += [
        tap("T4", 40000, "NAV_HOME", "HOME"),
        tap("T4", 40900, "LETS_GO", "NAV"),
        glance("T4", 40100, 700, "other"),
    ]
    events += [drive("T4", t, 21.0, 0.0) for t in range(40000, 41001, 500)]

    # T5, T6: media-only trips that never match the task.
    events += [
        tap("T5", 50000, "MEDIA_HOME", "HOME"),
        tap("T5", 50500, "PLAY_PAUSE", "MEDIA"),
        tap("T6", 60000, "MEDIA_HOME", "HOME"),
        tap("T6", 60400, "NEXT_TRACK", "MEDIA"),
        tap("T6", 61000, "BACK_HOME", "MEDIA"),
    ]

    (root / "trips.ndjson").write_text(
        "".join(json.dumps(t) + "\n" for t in trips), encoding="utf-8")
    (root / "events.ndjson").write_text(
        "".join(json.dumps(e) + "\n" for e in events), encoding="utf-8")
    (root / "concept.json").write_text(json.dumps(CONCEPT, indent=2), encoding="utf-8")


def save(name: str, body: object) -> None:
    path = FIXTURES / name
    path.write_text(json.dumps(body, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path.relative_to(FIXTURES.parents[1])}")


def main() -> int:
    import tempfile

    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        build_corpus(root)
        app = create_app(root, root / "concept.json")
        with TestClient(app) as client:
            save("kpis.json", client.get("/kpis").json())
            save("elements.json", client.get("/elements").json())

            analysis = client.post("/analysis", json={"task": TASK}).json()
            save("analysis.json", analysis)

            filtered = client.post("/analysis", json={
                "task": TASK, "filters": {"min_support": 0.4}}).json()
            save("analysis_min_support.json", filtered)

            paths = [row["path"] for row in analysis["flow_table"][:3]]
            compare = client.post("/analysis/compare", json={
                "task": TASK, "paths": paths, "metric": "glance_count_offroad"}).json()
            save("compare.json", compare)

            long_glance_id = next(
                p["sequence_id"]
                for plot in compare["box_plots"]
                for p in plot["points"]
                if "T1:" in p["sequence_id"]
            )
            detail = client.get(f"/sequence/{long_glance_id}")
            assert detail.status_code == 200, detail.text
            save("sequence_long_glance.json", detail.json())

            bad = client.post("/analysis", json={
                "task": {"start_element": "NAV_HOME", "end_element": "NO_SUCH"}})
            assert bad.status_code == 422
            save("error_unknown_element.json", bad.json())

            # Reload last so every fixture above shares one snapshot_id.
            client.post("/admin/reload")
            stale = client.get(f"/sequence/{long_glance_id}")
            assert stale.status_code == 410
            save("error_stale_sequence.json", stale.json())
    return 0


if __name__ == "__main__":
    sys.exit(main())
