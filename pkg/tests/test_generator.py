"""Seeded corpus generation: determinism, exact planting, validity."""

from __future__ import annotations

import json

import pytest

from flowlens.extraction import extract_sequences
from flowlens.flows import flow_statistics, group_into_flows
from flowlens.generator import (
    ConfigError,
    GeneratorConfig,
    generate_corpus,
    load_config,
)
from flowlens.ingest import corpus_from_dir
from flowlens.model import OFFROAD_AOIS, TaskDefinition


def config_with(**overrides) -> GeneratorConfig:
    base = dict(
        seed=7,
        planted_flows=((("A", "B", "C"), 6), (("A", "C"), 4)),
        noise_trips=10,
    )
    base.update(overrides)
    return GeneratorConfig(**base)


def test_same_config_yields_byte_identical_files(tmp_path):
    cfg = config_with()
    first = tmp_path / "first"
    second = tmp_path / "second"
    generate_corpus(cfg, first)
    generate_corpus(cfg, second)
    for name in ("trips.ndjson", "events.ndjson", "concept.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_different_seeds_differ_in_timestamps(tmp_path):
    generate_corpus(config_with(seed=1), tmp_path / "a")
    generate_corpus(config_with(seed=2), tmp_path / "b")
    times_a = [
        json.loads(line)["t"]
        for line in (tmp_path / "a" / "events.ndjson").read_text().splitlines()
        if json.loads(line)["type"] == "interaction"
    ]
    times_b = [
        json.loads(line)["t"]
        for line in (tmp_path / "b" / "events.ndjson").read_text().splitlines()
        if json.loads(line)["type"] == "interaction"
    ]
    assert times_a != times_b


def test_pipeline_recovers_planted_counts_exactly(tmp_path):
    cfg = config_with()
    generate_corpus(cfg, tmp_path)
    corpus = corpus_from_dir(tmp_path)
    assert len(corpus.trips) == 20
    stats = flow_statistics(
        group_into_flows(extract_sequences(corpus, cfg.task))
    )
    assert [(fs.path, fs.count, fs.share) for fs in stats] == [
        (("A", "B", "C"), 6, 0.6),
        (("A", "C"), 4, 0.4),
    ]


def test_noise_only_corpus_yields_no_sequences(tmp_path):
    generate_corpus(GeneratorConfig(seed=3, noise_trips=5), tmp_path)
    corpus = corpus_from_dir(tmp_path)
    assert len(corpus.trips) == 5
    result = extract_sequences(corpus, TaskDefinition("A", "C"))
    assert result.sequences == ()


def test_near_miss_noise_contributes_zero_sequences(tmp_path):
    cfg = config_with(noise_trips=8, near_miss_noise=True)
    generate_corpus(cfg, tmp_path)
    corpus = corpus_from_dir(tmp_path)
    near_miss_trips = 0
    for trip_id, events in corpus.interactions.items():
        if events and events[0].element_id == "A" and trip_id not in _planted_ids(cfg):
            near_miss_trips += 1
    assert near_miss_trips == 8
    result = extract_sequences(corpus, cfg.task)
    assert len(result.sequences) == 10


def _planted_ids(cfg: GeneratorConfig) -> set[str]:
    planted = sum(count for _, count in cfg.planted_flows)
    return {f"T{i:05d}" for i in range(planted)}


def test_generated_trips_all_pass_validation(tmp_path):
    generate_corpus(config_with(noise_trips=30), tmp_path)
    corpus = corpus_from_dir(tmp_path)
    assert corpus.exclusions == ()
    assert len(corpus.trips) == 40


def test_every_trip_has_an_offroad_glance_overlapping_its_span(tmp_path):
    generate_corpus(config_with(noise_trips=25), tmp_path)
    corpus = corpus_from_dir(tmp_path)
    for trip_id, events in corpus.interactions.items():
        t_first, t_last = events[0].t, events[-1].t
        overlapping = [
            g
            for g in corpus.glances[trip_id]
            if g.aoi in OFFROAD_AOIS and g.t_start < t_last and g.t_end > t_first
        ]
        assert overlapping, trip_id


def test_metadata_drawn_round_robin(tmp_path):
    generate_corpus(config_with(), tmp_path)
    corpus = corpus_from_dir(tmp_path)
    models = [corpus.trips[f"T{i:05d}"].car_model for i in range(6)]
    pool = GeneratorConfig(seed=0).trip_meta_pool.car_models
    assert models == [pool[i % len(pool)] for i in range(6)]


def test_concept_database_covers_every_element(tmp_path):
    generate_corpus(config_with(noise_trips=10), tmp_path)
    corpus = corpus_from_dir(tmp_path)
    used = {ev.element_id for events in corpus.interactions.values() for ev in events}
    assert used <= set(corpus.concept)


class TestConfigValidation:
    def test_negative_counts_rejected(self):
        with pytest.raises(ConfigError):
            config_with(noise_trips=-1)
        with pytest.raises(ConfigError):
            config_with(planted_flows=((("A", "C"), -2),))

    def test_paths_must_share_task_elements(self):
        with pytest.raises(ConfigError):
            config_with(planted_flows=((("A", "C"), 1), (("X", "C"), 1)))
        with pytest.raises(ConfigError):
            config_with(planted_flows=((("A", "C"), 1), (("A", "Y"), 1)))

    def test_interior_task_elements_rejected(self):
        with pytest.raises(ConfigError):
            config_with(planted_flows=((("A", "B", "A", "C"), 1), (("A", "C"), 1)))
        with pytest.raises(ConfigError):
            config_with(planted_flows=((("A", "C", "B", "C"), 1),))

    def test_noise_elements_must_avoid_task_elements(self):
        with pytest.raises(ConfigError):
            config_with(noise_elements=("A", "MENU"))

    def test_duration_ranges_must_be_positive(self):
        with pytest.raises(ConfigError):
            config_with(inter_interaction_dt=(0, 100))
        with pytest.raises(ConfigError):
            config_with(inter_interaction_dt=(200, 100))

    def test_near_miss_requires_a_task(self):
        with pytest.raises(ConfigError):
            GeneratorConfig(seed=1, noise_trips=3, near_miss_noise=True)


class TestConfigFile:
    def test_load_config_round_trip(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(
            json.dumps(
                {
                    "seed": 42,
                    "planted_flows": [
                        {"path": ["A", "B", "C"], "count": 60},
                        {"path": ["A", "C"], "count": 10},
                    ],
                    "noise_trips": 100,
                    "inter_interaction_dt": [300, 900],
                    "trip_meta_pool": {"dates": ["2026-01-05", "2026-01-06"]},
                }
            ),
            encoding="utf-8",
        )
        cfg = load_config(path)
        assert cfg.seed == 42
        assert cfg.planted_flows[0] == (("A", "B", "C"), 60)
        assert cfg.noise_trips == 100
        assert cfg.inter_interaction_dt == (300, 900)
        assert [d.isoformat() for d in cfg.trip_meta_pool.dates] == [
            "2026-01-05",
            "2026-01-06",
        ]
        assert cfg.task == TaskDefinition("A", "C")

    def test_missing_seed_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{}", encoding="utf-8")
        with pytest.raises(ConfigError, match="seed"):
            load_config(path)

    def test_malformed_json_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_bad_dates_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(
            json.dumps({"seed": 1, "trip_meta_pool": {"dates": ["yesterday"]}}),
            encoding="utf-8",
        )
        with pytest.raises(ConfigError):
            load_config(path)
