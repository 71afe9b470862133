"""CLI wiring: argument parsing, exit codes, service startup."""

from __future__ import annotations

import json
import subprocess
import sys
import time

import pytest
import uvicorn
from fastapi.testclient import TestClient

from flowlens.cli import main
from flowlens.generator import GeneratorConfig, generate_corpus

CONFIG = {
    "seed": 5,
    "planted_flows": [{"path": ["A", "B", "C"], "count": 3}],
    "noise_trips": 2,
}


def write_config(tmp_path) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(CONFIG), encoding="utf-8")
    return str(path)


def make_data_dir(tmp_path):
    out = tmp_path / "data"
    out.mkdir()
    generate_corpus(GeneratorConfig(seed=3, noise_trips=4), out)
    return out


class TestGenerate:
    def test_writes_corpus_files(self, tmp_path, capsys):
        out = tmp_path / "out"
        rc = main(["generate", "--config", write_config(tmp_path), "--out", str(out)])
        assert rc == 0
        assert (out / "trips.ndjson").is_file()
        assert (out / "events.ndjson").is_file()
        assert (out / "concept.json").is_file()
        assert capsys.readouterr().out.count("wrote ") == 3

    def test_bad_config_exits_2(self, tmp_path, capsys):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"noise_trips": 2}), encoding="utf-8")
        rc = main(["generate", "--config", str(path), "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_module_entry_point(self, tmp_path):
        result = subprocess.run(
            [
                sys.executable,
                "-m",
                "flowlens.cli",
                "generate",
                "--config",
                write_config(tmp_path),
                "--out",
                str(tmp_path / "out"),
            ],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0, result.stderr


class TestServe:
    def test_starts_uvicorn_with_loaded_app(self, tmp_path, monkeypatch):
        data = make_data_dir(tmp_path)
        captured = {}

        def fake_run(app, host, port):
            captured.update(app=app, host=host, port=port)

        monkeypatch.setattr(uvicorn, "run", fake_run)
        rc = main(
            [
                "serve",
                "--data-dir",
                str(data),
                "--concept-db",
                str(data / "concept.json"),
                "--port",
                "5151",
            ]
        )
        assert rc == 0
        assert (captured["host"], captured["port"]) == ("127.0.0.1", 5151)
        with TestClient(captured["app"]) as client:
            assert client.get("/kpis").json()["trip_count"] == 4

    def test_missing_data_dir_exits_2(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setattr(uvicorn, "run", lambda *a, **k: None)
        rc = main(
            [
                "serve",
                "--data-dir",
                str(tmp_path / "nope"),
                "--concept-db",
                str(tmp_path / "concept.json"),
            ]
        )
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_periodic_reload_advances_snapshot(self, tmp_path, monkeypatch):
        data = make_data_dir(tmp_path)
        captured = {}
        monkeypatch.setattr(uvicorn, "run", lambda app, host, port: captured.update(app=app))
        rc = main(
            [
                "serve",
                "--data-dir",
                str(data),
                "--concept-db",
                str(data / "concept.json"),
                "--reload-interval",
                "0.03",
            ]
        )
        assert rc == 0
        app = captured["app"]
        store = app.state.store
        try:
            first = store.corpus.snapshot_id
            deadline = time.monotonic() + 3.0
            while store.corpus.snapshot_id == first:
                assert time.monotonic() < deadline, "periodic reload never fired"
                time.sleep(0.02)
        finally:
            app.state.reload_stop.set()


def test_unknown_command_rejected():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
