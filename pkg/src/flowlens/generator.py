"""Seeded synthetic telematics corpora with exactly planted flow counts.

Every planted flow appears as its own trip containing precisely the
configured element path, so running the full pipeline over a generated
corpus must recover the configured counts exactly. Noise trips contain no
task-start interaction (or, in near-miss mode, a start but never an end)
and therefore contribute zero sequences. Output is deterministic per seed:
running the same config twice yields byte-identical files.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Mapping, Optional, Union

from .model import Aoi, Gesture, OFFROAD_AOIS, TaskDefinition


class ConfigError(ValueError):
    """The generator configuration is invalid."""


_DEFAULT_NOISE_ELEMENTS = ("MENU", "TILE_A", "TILE_B", "BACK", "SCROLL")
_GESTURES = tuple(Gesture)
_OFFROAD_CHOICES = tuple(sorted(OFFROAD_AOIS, key=lambda a: a.value))


@dataclass(frozen=True, slots=True)
class GlanceModel:
    """Alternating road/off-road glance tiling with per-AOI duration ranges.

    pad extends the tiled region beyond the trip's interaction span so the
    detail timeline has surrounding context.
    """

    durations: Mapping[Aoi, tuple[int, int]] = field(
        default_factory=lambda: {
            Aoi.ROAD: (500, 3000),
            Aoi.CENTER_STACK: (300, 2500),
            Aoi.OTHER: (300, 1200),
        }
    )
    pad: int = 3000

    def __post_init__(self) -> None:
        for aoi in Aoi:
            if aoi not in self.durations:
                raise ConfigError(f"glance_model.durations missing aoi {aoi.value}")
            lo, hi = self.durations[aoi]
            if lo <= 0 or hi < lo:
                raise ConfigError(
                    f"glance_model.durations[{aoi.value}] must be positive lo <= hi"
                )
        if self.pad < 0:
            raise ConfigError("glance_model.pad must be >= 0")

    @classmethod
    def from_dict(cls, d: dict) -> "GlanceModel":
        kwargs: dict = {}
        if "durations" in d:
            kwargs["durations"] = {
                Aoi(aoi): (lo, hi) for aoi, (lo, hi) in d["durations"].items()
            }
        if "pad" in d:
            kwargs["pad"] = d["pad"]
        return cls(**kwargs)


@dataclass(frozen=True, slots=True)
class DrivingModel:
    """Random-walk speed samples at a fixed interval; speed never drops below 0."""

    start_speed: float = 13.0
    delta_range: tuple[float, float] = (-1.5, 1.5)
    sample_interval: int = 1000

    def __post_init__(self) -> None:
        if self.start_speed < 0:
            raise ConfigError("driving_model.start_speed must be >= 0")
        if self.delta_range[0] > self.delta_range[1]:
            raise ConfigError("driving_model.delta_range must be lo <= hi")
        if self.sample_interval <= 0:
            raise ConfigError("driving_model.sample_interval must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "DrivingModel":
        kwargs: dict = {}
        if "start_speed" in d:
            kwargs["start_speed"] = d["start_speed"]
        if "delta_range" in d:
            kwargs["delta_range"] = tuple(d["delta_range"])
        if "sample_interval" in d:
            kwargs["sample_interval"] = d["sample_interval"]
        return cls(**kwargs)


@dataclass(frozen=True, slots=True)
class TripMetaPool:
    """Metadata pools; trips draw from each pool round-robin by trip index."""

    car_models: tuple[str, ...] = ("M1", "M2", "M3")
    software_versions: tuple[str, ...] = ("1.0", "1.1", "2.0")
    screen_sizes: tuple[str, ...] = ('10"', '12"')
    dates: tuple[date, ...] = (date(2026, 3, 2), date(2026, 3, 3), date(2026, 3, 4))
    vehicle_ids: tuple[str, ...] = tuple(f"V{i:03d}" for i in range(1, 11))

    def __post_init__(self) -> None:
        for name in ("car_models", "software_versions", "screen_sizes", "dates", "vehicle_ids"):
            if not getattr(self, name):
                raise ConfigError(f"trip_meta_pool.{name} must be nonempty")

    @classmethod
    def from_dict(cls, d: dict) -> "TripMetaPool":
        kwargs: dict = {}
        for name in ("car_models", "software_versions", "screen_sizes", "vehicle_ids"):
            if name in d:
                kwargs[name] = tuple(d[name])
        if "dates" in d:
            try:
                kwargs["dates"] = tuple(date.fromisoformat(s) for s in d["dates"])
            except ValueError as exc:
                raise ConfigError(f"trip_meta_pool.dates: {exc}") from exc
        return cls(**kwargs)


@dataclass(frozen=True, slots=True)
class GeneratorConfig:
    """Everything that determines a generated corpus, including the seed."""

    seed: int
    planted_flows: tuple[tuple[tuple[str, ...], int], ...] = ()
    noise_trips: int = 0
    inter_interaction_dt: tuple[int, int] = (400, 1600)
    glance_model: GlanceModel = field(default_factory=GlanceModel)
    driving_model: DrivingModel = field(default_factory=DrivingModel)
    trip_meta_pool: TripMetaPool = field(default_factory=TripMetaPool)
    noise_elements: tuple[str, ...] = _DEFAULT_NOISE_ELEMENTS
    noise_interactions: tuple[int, int] = (2, 6)
    near_miss_noise: bool = False

    def __post_init__(self) -> None:
        if self.noise_trips < 0:
            raise ConfigError("noise_trips must be >= 0")
        if any(count < 0 for _, count in self.planted_flows):
            raise ConfigError("planted flow counts must be >= 0")
        lo, hi = self.inter_interaction_dt
        if lo <= 0 or hi < lo:
            raise ConfigError("inter_interaction_dt must be positive lo <= hi")
        n_lo, n_hi = self.noise_interactions
        if n_lo < 1 or n_hi < n_lo:
            raise ConfigError("noise_interactions must be 1 <= lo <= hi")
        if not self.noise_elements:
            raise ConfigError("noise_elements must be nonempty")

        task = self.task
        for path, _ in self.planted_flows:
            if len(path) < 2:
                raise ConfigError(f"planted path {list(path)} must have >= 2 elements")
            if path[0] != task.start_element or path[-1] != task.end_element:
                raise ConfigError(
                    f"planted path {list(path)} must start with "
                    f"{task.start_element} and end with {task.end_element}"
                )
            if task.start_element in path[1:]:
                raise ConfigError(
                    f"planted path {list(path)} repeats the start element"
                )
            if task.end_element in path[:-1]:
                raise ConfigError(f"planted path {list(path)} repeats the end element")
        if task is not None:
            overlap = {task.start_element, task.end_element} & set(self.noise_elements)
            if overlap:
                raise ConfigError(f"noise_elements must not contain task elements {overlap}")
        if self.near_miss_noise and task is None:
            raise ConfigError("near_miss_noise requires at least one planted flow")

    @property
    def task(self) -> Optional[TaskDefinition]:
        """The task implied by the planted paths; None when nothing is planted."""
        if not self.planted_flows:
            return None
        starts = {path[0] for path, _ in self.planted_flows if path}
        ends = {path[-1] for path, _ in self.planted_flows if path}
        if len(starts) != 1 or len(ends) != 1:
            raise ConfigError("all planted paths must share one start and one end element")
        (start,), (end,) = starts, ends
        if start == end:
            raise ConfigError("planted start and end elements must differ")
        return TaskDefinition(start_element=start, end_element=end)

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorConfig":
        if "seed" not in d:
            raise ConfigError('config is missing "seed"')
        kwargs: dict = {"seed": d["seed"]}
        if "planted_flows" in d:
            try:
                kwargs["planted_flows"] = tuple(
                    (tuple(entry["path"]), entry["count"]) for entry in d["planted_flows"]
                )
            except (KeyError, TypeError) as exc:
                raise ConfigError(
                    'planted_flows entries must be {"path": [...], "count": n}'
                ) from exc
        for name in ("noise_trips", "near_miss_noise"):
            if name in d:
                kwargs[name] = d[name]
        for name in ("inter_interaction_dt", "noise_interactions", "noise_elements"):
            if name in d:
                kwargs[name] = tuple(d[name])
        if "glance_model" in d:
            kwargs["glance_model"] = GlanceModel.from_dict(d["glance_model"])
        if "driving_model" in d:
            kwargs["driving_model"] = DrivingModel.from_dict(d["driving_model"])
        if "trip_meta_pool" in d:
            kwargs["trip_meta_pool"] = TripMetaPool.from_dict(d["trip_meta_pool"])
        return cls(**kwargs)


def load_config(path: Union[str, Path]) -> GeneratorConfig:
    """Read a GeneratorConfig from a JSON file mirroring its field names."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return GeneratorConfig.from_dict(raw)


def _tile_glances(
    rng: random.Random,
    t_first: int,
    t_last: int,
    model: GlanceModel,
) -> list[tuple[int, int, Aoi]]:
    """Tile [t_first - pad, t_last + pad] with alternating road/off-road glances.

    Tiling grows outward from an off-road glance anchored at the span
    midpoint, so every trip has at least one off-road glance overlapping its
    interaction span. Returns (t_start, duration, aoi), sorted by t_start.
    """

    def draw(aoi: Aoi) -> int:
        lo, hi = model.durations[aoi]
        return rng.randint(lo, hi)

    window_lo = max(t_first - model.pad, 0)
    window_hi = t_last + model.pad

    mid = (t_first + t_last) // 2
    anchor_aoi = rng.choice(_OFFROAD_CHOICES)
    anchor_duration = draw(anchor_aoi)
    anchor_start = max(mid - anchor_duration // 2, 0)
    glances = [(anchor_start, anchor_duration, anchor_aoi)]

    cursor = anchor_start + anchor_duration
    on_road = True
    while cursor < window_hi:
        aoi = Aoi.ROAD if on_road else rng.choice(_OFFROAD_CHOICES)
        duration = draw(aoi)
        glances.append((cursor, duration, aoi))
        cursor += duration
        on_road = not on_road

    cursor = anchor_start
    on_road = True
    while cursor > window_lo and cursor > 0:
        aoi = Aoi.ROAD if on_road else rng.choice(_OFFROAD_CHOICES)
        duration = min(draw(aoi), cursor)
        glances.append((cursor - duration, duration, aoi))
        cursor -= duration
        on_road = not on_road

    glances.sort(key=lambda g: g[0])
    return glances


def _interaction_timestamps(
    rng: random.Random,
    n: int,
    dt_range: tuple[int, int],
    t0: int,
) -> list[int]:
    times = [t0]
    for _ in range(n - 1):
        times.append(times[-1] + rng.randint(*dt_range))
    return times


def generate_corpus(config: GeneratorConfig, out_dir: Union[str, Path]) -> tuple[Path, Path, Path]:
    """Write trips.ndjson, events.ndjson, and concept.json into out_dir.

    Trip order, record order within a trip, and every random draw are fully
    determined by the config, so equal configs produce byte-identical files.
    Returns the three output paths.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(config.seed)
    task = config.task

    trip_paths: list[Optional[tuple[str, ...]]] = []
    for path, count in config.planted_flows:
        trip_paths.extend([path] * count)
    trip_paths.extend([None] * config.noise_trips)

    elements: set[str] = set(config.noise_elements)
    for path, _ in config.planted_flows:
        elements.update(path)
    if task is not None:
        elements.add(task.start_element)

    pool = config.trip_meta_pool
    trip_lines: list[str] = []
    event_lines: list[str] = []

    for index, planted in enumerate(trip_paths):
        trip_id = f"T{index:05d}"
        trip_lines.append(
            json.dumps(
                {
                    "type": "trip",
                    "trip_id": trip_id,
                    "vehicle_id": pool.vehicle_ids[index % len(pool.vehicle_ids)],
                    "car_model": pool.car_models[index % len(pool.car_models)],
                    "software_version": pool.software_versions[
                        index % len(pool.software_versions)
                    ],
                    "screen_size": pool.screen_sizes[index % len(pool.screen_sizes)],
                    "date": pool.dates[index % len(pool.dates)].isoformat(),
                },
                separators=(",", ":"),
            )
        )

        if planted is not None:
            element_ids = list(planted)
        else:
            n = rng.randint(*config.noise_interactions)
            element_ids = [rng.choice(config.noise_elements) for _ in range(n)]
            if config.near_miss_noise and task is not None:
                element_ids[0] = task.start_element

        t0 = config.glance_model.pad + rng.randint(0, 1000)
        times = _interaction_timestamps(rng, len(element_ids), config.inter_interaction_dt, t0)
        for t, element_id in zip(times, element_ids):
            event_lines.append(
                json.dumps(
                    {
                        "type": "interaction",
                        "trip_id": trip_id,
                        "t": t,
                        "element_id": element_id,
                        "gesture": rng.choice(_GESTURES).value,
                        "screen_id": f"S_{element_id}",
                    },
                    separators=(",", ":"),
                )
            )

        for t_start, duration, aoi in _tile_glances(rng, times[0], times[-1], config.glance_model):
            event_lines.append(
                json.dumps(
                    {
                        "type": "glance",
                        "trip_id": trip_id,
                        "t_start": t_start,
                        "duration": duration,
                        "aoi": aoi.value,
                    },
                    separators=(",", ":"),
                )
            )

        speed = config.driving_model.start_speed
        t = max(times[0] - config.glance_model.pad, 0)
        t_end = times[-1] + config.glance_model.pad
        while t <= t_end:
            event_lines.append(
                json.dumps(
                    {
                        "type": "driving",
                        "trip_id": trip_id,
                        "t": t,
                        "speed": round(speed, 3),
                        "steering_angle": round(rng.uniform(-30.0, 30.0), 3),
                    },
                    separators=(",", ":"),
                )
            )
            speed = max(speed + rng.uniform(*config.driving_model.delta_range), 0.0)
            t += config.driving_model.sample_interval

    concept = [
        {
            "element_id": element_id,
            "label": element_id.replace("_", " ").title(),
            "screen_id": f"S_{element_id}",
            "description": f"UI element {element_id}",
        }
        for element_id in sorted(elements)
    ]

    trips_path = out_dir / "trips.ndjson"
    events_path = out_dir / "events.ndjson"
    concept_path = out_dir / "concept.json"
    trips_path.write_text("\n".join(trip_lines) + ("\n" if trip_lines else ""), encoding="utf-8")
    events_path.write_text(
        "\n".join(event_lines) + ("\n" if event_lines else ""), encoding="utf-8"
    )
    concept_path.write_text(json.dumps(concept, indent=2) + "\n", encoding="utf-8")
    return trips_path, events_path, concept_path
