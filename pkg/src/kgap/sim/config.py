"""Scenario configuration: loading, schema validation and defaults."""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Optional

import jsonschema

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

TECHNOLOGIES = ("WiFi", "LTE", "Satellite")
STRATEGIES = ("SSS", "SARA", "Random", "Omniscient")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class APSpec:
    id: str
    technology: str
    position: tuple
    range: float
    bandwidth: float  # Mbit/s
    tx_power: float  # dBm
    antenna_gain: float  # dBi


@dataclass(frozen=True)
class Incident:
    time: int = 400
    position: tuple = (20.0, 20.0)
    reaction_time: tuple = (401, 413)
    settle: tuple = ((5.0, 5.0), (30.0, 30.0))


@dataclass(frozen=True)
class ScenarioConfig:
    aps: tuple
    area: tuple = (300.0, 300.0)
    duration: int = 1000
    tick: int = 1
    seed: int = 0
    station_count: int = 27
    station_range: float = 75.0
    default_packet_loss: float = 0.10
    sara_station_count: int = 16
    sss_technologies: tuple = ("WiFi", "LTE", "Satellite")
    speed_mean: float = 2.5
    speed_spread: float = 1.0
    heading_sigma: float = 0.3
    incident: Incident = field(default_factory=Incident)
    reference_loss: float = 40.0
    path_loss_exponent: float = 3.5
    bandwidth_noise: float = 0.05
    strategy: str = "SARA"
    selection_start_margin: int = 10
    selection_end_margin: int = 100
    rules: Optional[str] = None
    services: tuple = ()  # ((station_id, (tag, ...)), ...)
    name: str = "custom"

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return replace(self, seed=seed)

    def services_of(self, station_id: str) -> tuple:
        return dict(self.services).get(station_id, ())

    def validate(self) -> "ScenarioConfig":
        w, h = self.area
        if w <= 0 or h <= 0:
            raise ConfigError("area must be positive")
        if self.tick <= 0 or self.duration < 0:
            raise ConfigError("tick must be positive and duration non-negative")
        if not 0 <= self.sara_station_count <= self.station_count:
            raise ConfigError("sara_station_count must lie in [0, station_count]")
        if not 0 <= self.default_packet_loss < 1:
            raise ConfigError("default_packet_loss must lie in [0, 1)")
        if self.speed_spread > self.speed_mean:
            raise ConfigError("speed_spread must not exceed speed_mean")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        ids = set()
        for ap in self.aps:
            if ap.id in ids:
                raise ConfigError(f"duplicate AP id {ap.id}")
            ids.add(ap.id)
            if ap.technology not in TECHNOLOGIES:
                raise ConfigError(f"AP {ap.id}: unknown technology {ap.technology!r}")
            x, y = ap.position
            if not (0 <= x <= w and 0 <= y <= h):
                raise ConfigError(f"AP {ap.id} at {ap.position} lies outside the area")
            if ap.range <= 0 or ap.bandwidth <= 0:
                raise ConfigError(f"AP {ap.id}: range and bandwidth must be positive")
        for tech in self.sss_technologies:
            if tech not in TECHNOLOGIES:
                raise ConfigError(f"unknown technology {tech!r} in sss_technologies")
        r0, r1 = self.incident.reaction_time
        if r0 > r1:
            raise ConfigError("reaction_time range is reversed")
        (x0, y0), (x1, y1) = self.incident.settle
        if not (0 <= x0 < x1 <= w and 0 <= y0 < y1 <= h):
            raise ConfigError("settle rectangle must be a non-empty box inside the area")
        ix, iy = self.incident.position
        if not (x0 <= ix <= x1 and y0 <= iy <= y1):
            raise ConfigError("incident position must lie inside the settle rectangle")
        n = self.station_count
        for sid, _ in self.services:
            if not (sid.startswith("sta") and sid[3:].isdigit() and 1 <= int(sid[3:]) <= n):
                raise ConfigError(f"services given for unknown station {sid!r}")
        return self


def _schema() -> dict:
    text = resources.files("kgap.scenarios").joinpath("scenario.schema.json").read_text()
    return json.loads(text)


def from_dict(doc: dict, base_dir: Optional[Path] = None) -> ScenarioConfig:
    try:
        jsonschema.validate(doc, _schema())
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {e.message}") from None
    sc = doc["scenario"]
    mob = doc["mobility"]
    inc = doc["incident"]
    pl = doc["path_loss"]
    meas = doc.get("measurement", {})
    sel = doc.get("selection", {})
    aps = tuple(
        APSpec(a["id"], a["technology"], tuple(a["position"]), float(a["range"]),
               float(a["bandwidth"]), float(a["tx_power"]), float(a["antenna_gain"]))
        for a in doc["ap"]
    )
    rules = sc.get("rules")
    if rules is not None and base_dir is not None and not Path(rules).is_absolute():
        rules = str(base_dir / rules)
    cfg = ScenarioConfig(
        aps=aps,
        area=tuple(float(v) for v in sc["area"]),
        duration=sc["duration"],
        tick=sc["tick"],
        seed=sc.get("seed", 0),
        station_count=sc["station_count"],
        station_range=float(sc["station_range"]),
        default_packet_loss=float(sc["default_packet_loss"]),
        sara_station_count=sc["sara_station_count"],
        sss_technologies=tuple(sc.get("sss_technologies", list(TECHNOLOGIES))),
        speed_mean=float(mob["speed_mean"]),
        speed_spread=float(mob.get("speed_spread", 0.0)),
        heading_sigma=float(mob.get("heading_sigma", 0.3)),
        incident=Incident(
            time=inc["time"],
            position=tuple(float(v) for v in inc["position"]),
            reaction_time=tuple(inc["reaction_time"]),
            settle=tuple(tuple(float(v) for v in p) for p in inc["settle"]),
        ),
        reference_loss=float(pl["reference_loss"]),
        path_loss_exponent=float(pl["exponent"]),
        bandwidth_noise=float(meas.get("noise", 0.05)),
        strategy=sel.get("strategy", "SARA"),
        selection_start_margin=sel.get("start_margin", 10),
        selection_end_margin=sel.get("end_margin", 100),
        rules=rules,
        services=tuple(sorted((k, tuple(v)) for k, v in sc.get("services", {}).items())),
        name=sc.get("name", "custom"),
    )
    return cfg.validate()


def loads(text: str, base_dir: Optional[Path] = None) -> ScenarioConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"invalid TOML: {e}") from None
    return from_dict(doc, base_dir)


def load_scenario(path_or_name) -> ScenarioConfig:
    """Load a scenario file, or a bundled scenario by name (e.g. ``paper_default``)."""
    path = Path(path_or_name)
    if path.is_file():
        return loads(path.read_text(encoding="utf-8"), path.parent)
    name = str(path_or_name)
    if name.endswith(".toml"):
        name = name[:-5]
    bundled = resources.files("kgap.scenarios").joinpath(f"{name}.toml")
    if "/" not in name and bundled.is_file():
        return loads(bundled.read_text(encoding="utf-8"))
    raise ConfigError(f"no scenario file or bundled scenario named {path_or_name!r}")


def paper_default() -> ScenarioConfig:
    return load_scenario("paper_default")
