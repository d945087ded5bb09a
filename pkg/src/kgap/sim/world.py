"""Discrete-time world model: AP placement, station mobility and the channel model."""
from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional

from ..kg import vocab
from ..kg.terms import IRI
from . import radio
from .config import ScenarioConfig

WANDER, GATHER, SETTLED = "wander", "gather", "settled"
_PHASE_ORDER = {WANDER: 0, GATHER: 1, SETTLED: 2}
UNREACHABLE = float("-inf")
TWO_PI = 2.0 * math.pi


class SimulationError(RuntimeError):
    pass


class OutOfRangeError(SimulationError):
    pass


def station_iri(index: int) -> IRI:
    return vocab.toco(f"sta{index}")


def ap_iri(ap_id: str) -> IRI:
    return vocab.toco(ap_id)


@dataclass(frozen=True)
class AccessPointState:
    id: IRI
    technology: str
    position: tuple
    range: float
    channel_bandwidth: float
    tx_power: float
    antenna_gain: float
    associated: frozenset = frozenset()

    @property
    def eirp(self) -> float:
        return self.tx_power + self.antenna_gain


@dataclass(frozen=True)
class StationState:
    id: IRI
    position: tuple
    speed: float
    heading: float
    phase: str = WANDER
    reaction_time: int = 0
    associated_ap: Optional[IRI] = None
    strategy: str = "SSS"
    services: tuple = ()
    range: float = 75.0
    # set once a non-default strategy has placed the station; SSS then
    # leaves it alone while the AP stays in range
    pinned: bool = False


@dataclass(frozen=True)
class WorldState:
    clock: int
    aps: tuple  # sorted by IRI
    stations: tuple  # sta1..staN
    rng_state: tuple
    seed: int

    @cached_property
    def _ap_index(self) -> dict:
        return {ap.id: i for i, ap in enumerate(self.aps)}

    @cached_property
    def _sta_index(self) -> dict:
        return {s.id: i for i, s in enumerate(self.stations)}

    def ap(self, ap_id) -> AccessPointState:
        try:
            return self.aps[self._ap_index[_as_iri(ap_id)]]
        except KeyError:
            raise SimulationError(f"unknown access point {ap_id}") from None

    def station(self, sta_id) -> StationState:
        try:
            return self.stations[self._sta_index[_as_iri(sta_id)]]
        except KeyError:
            raise SimulationError(f"unknown station {sta_id}") from None

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.clock, self.aps, self.stations, self.rng_state)).encode())
        return h.hexdigest()

    def all_settled(self) -> bool:
        return all(s.phase == SETTLED for s in self.stations)


def _as_iri(x) -> IRI:
    if isinstance(x, IRI):
        return x
    if isinstance(x, str) and "://" not in x:
        return vocab.toco(x)
    return IRI(x)


def distance(a: tuple, b: tuple) -> float:
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return math.sqrt(dx * dx + dy * dy)


def in_range(ap: AccessPointState, sta: StationState) -> bool:
    """Coverage is the AP's radio range."""
    return distance(ap.position, sta.position) <= ap.range


def rssi(ap: AccessPointState, sta: StationState, config: ScenarioConfig) -> float:
    """Received signal strength (dBm) under log-distance path loss; -inf out of range."""
    d = distance(ap.position, sta.position)
    if d > ap.range:
        return UNREACHABLE
    return radio.path_rssi(ap.eirp, config.reference_loss, config.path_loss_exponent, d)


def aps_in_range(world: WorldState, sta: StationState) -> list[AccessPointState]:
    return [ap for ap in world.aps if in_range(ap, sta)]


def achievable_throughput(ap: AccessPointState, sta: StationState, joining: bool,
                          config: ScenarioConfig) -> float:
    """Equal share of the AP channel after loss, in Mbit/s."""
    if not in_range(ap, sta):
        raise OutOfRangeError(f"{sta.id} is out of range of {ap.id}")
    n = len(ap.associated)
    if joining and sta.id not in ap.associated:
        n += 1
    return ap.channel_bandwidth / max(n, 1) * (1.0 - config.default_packet_loss)


def measure_bandwidth(world: WorldState, sta: StationState, ap: AccessPointState,
                      config: ScenarioConfig, sample: int = 0, noise: Optional[float] = None) -> float:
    """Probe the bandwidth ``sta`` would get on ``ap``, with multiplicative noise.

    The noise draw is a function of (seed, clock, station, AP, sample) so
    probing never disturbs other random streams.
    """
    value = achievable_throughput(ap, sta, True, config)
    noise = config.bandwidth_noise if noise is None else noise
    if noise <= 0:
        return value
    rng = random.Random(f"{world.seed}/noise/{world.clock}/{sta.id.value}/{ap.id.value}/{sample}")
    return value * rng.uniform(1.0 - noise, 1.0 + noise)


def station_throughput(world: WorldState, sta: StationState, config: ScenarioConfig) -> float:
    if sta.associated_ap is None:
        return 0.0
    return achievable_throughput(world.ap(sta.associated_ap), sta, False, config)


# -- association bookkeeping -------------------------------------------------

def _with_associations(aps: tuple, stations: tuple) -> tuple:
    members: dict = {ap.id: set() for ap in aps}
    for s in stations:
        if s.associated_ap is not None:
            members[s.associated_ap].add(s.id)
    return tuple(replace(ap, associated=frozenset(members[ap.id])) for ap in aps)


def _sss_targets(aps: tuple, stations: tuple, config: ScenarioConfig) -> list:
    allowed = [ap.technology in config.sss_technologies for ap in aps]
    best = radio.strongest(
        [s.position[0] for s in stations], [s.position[1] for s in stations],
        [ap.position[0] for ap in aps], [ap.position[1] for ap in aps],
        [ap.range for ap in aps], [ap.eirp for ap in aps], allowed,
        config.reference_loss, config.path_loss_exponent,
    )
    return [aps[j].id if j >= 0 else None for j in best]


def _reassociate(aps: tuple, stations: tuple, config: ScenarioConfig) -> tuple:
    """Re-run SSS for unpinned stations; pinned ones keep their AP while in range."""
    targets = _sss_targets(aps, stations, config)
    by_id = {ap.id: ap for ap in aps}
    out = []
    for s, target in zip(stations, targets):
        if s.pinned and s.associated_ap is not None and in_range(by_id[s.associated_ap], s):
            out.append(s)
            continue
        if s.pinned or s.associated_ap != target:
            s = replace(s, associated_ap=target, pinned=False)
        out.append(s)
    return tuple(out)


# -- construction and stepping ------------------------------------------------

def _speed(rng: random.Random, config: ScenarioConfig) -> float:
    return rng.uniform(config.speed_mean - config.speed_spread, config.speed_mean + config.speed_spread)


def init_world(config: ScenarioConfig) -> WorldState:
    config.validate()
    aps = tuple(sorted(
        (AccessPointState(ap_iri(a.id), a.technology, tuple(a.position), a.range, a.bandwidth,
                          a.tx_power, a.antenna_gain) for a in config.aps),
        key=lambda ap: ap.id.value,
    ))
    rng = random.Random(f"{config.seed}/mobility")
    w, h = config.area
    r0, r1 = config.incident.reaction_time
    stations = []
    for i in range(1, config.station_count + 1):
        pos = (rng.uniform(0.0, w), rng.uniform(0.0, h))
        heading = rng.uniform(0.0, TWO_PI)
        speed = _speed(rng, config)
        reaction = rng.randint(r0, r1)
        sid = f"sta{i}"
        stations.append(StationState(station_iri(i), pos, speed, heading, WANDER, reaction,
                                     services=config.services_of(sid), range=config.station_range))
    chosen = random.Random(f"{config.seed}/assignment").sample(
        range(config.station_count), config.sara_station_count)
    for i in chosen:
        stations[i] = replace(stations[i], strategy=config.strategy)
    stations = _reassociate(aps, tuple(stations), config)
    return WorldState(0, _with_associations(aps, stations), stations, rng.getstate(), config.seed)


def _reflect(v: float, lo: float, hi: float) -> tuple:
    if hi <= lo:
        return lo, False
    flipped = False
    while v < lo or v > hi:
        v = 2.0 * lo - v if v < lo else 2.0 * hi - v
        flipped = not flipped
    return v, flipped


def _wander(s: StationState, rng, config: ScenarioConfig, box: tuple) -> StationState:
    (x0, y0), (x1, y1) = box
    heading = s.heading + rng.gauss(0.0, config.heading_sigma)
    speed = _speed(rng, config)
    step = speed * config.tick
    x, fx = _reflect(s.position[0] + step * math.cos(heading), x0, x1)
    y, fy = _reflect(s.position[1] + step * math.sin(heading), y0, y1)
    if fx:
        heading = math.pi - heading
    if fy:
        heading = -heading
    return replace(s, position=(x, y), speed=speed, heading=heading % TWO_PI)


def _inside(pos: tuple, box: tuple) -> bool:
    (x0, y0), (x1, y1) = box
    return x0 <= pos[0] <= x1 and y0 <= pos[1] <= y1


def _gather(s: StationState, config: ScenarioConfig) -> StationState:
    target = config.incident.position
    settle = config.incident.settle
    if _inside(s.position, settle):
        return replace(s, phase=SETTLED)
    d = distance(s.position, target)
    step = s.speed * config.tick
    if step >= d:
        pos = target
    else:
        f = step / d
        pos = (s.position[0] + (target[0] - s.position[0]) * f,
               s.position[1] + (target[1] - s.position[1]) * f)
    heading = math.atan2(target[1] - s.position[1], target[0] - s.position[0]) % TWO_PI
    phase = SETTLED if _inside(pos, settle) else GATHER
    return replace(s, position=pos, heading=heading, phase=phase)


def step(world: WorldState, config: ScenarioConfig) -> WorldState:
    """Advance one tick. Pure: the input world is left untouched."""
    rng = random.Random()
    rng.setstate(world.rng_state)
    clock = world.clock + config.tick
    area = ((0.0, 0.0), config.area)
    settle = config.incident.settle
    moved = []
    for s in world.stations:
        if s.phase == WANDER and clock >= s.reaction_time:
            s = replace(s, phase=GATHER)
        if s.phase == WANDER:
            s = _wander(s, rng, config, area)
        elif s.phase == GATHER:
            s = _gather(s, config)
        else:
            s = _wander(s, rng, config, settle)
        moved.append(s)
    stations = _reassociate(world.aps, tuple(moved), config)
    aps = _with_associations(world.aps, stations)
    return WorldState(clock, aps, stations, rng.getstate(), world.seed)


def associate(world: WorldState, sta_id, ap_id, pin: bool = True) -> WorldState:
    """Move a station onto ``ap_id`` (instantaneous handover)."""
    sta = world.station(sta_id)
    ap = world.ap(ap_id)
    if not in_range(ap, sta):
        raise OutOfRangeError(f"{sta.id} is out of range of {ap.id}")
    stations = tuple(
        replace(s, associated_ap=ap.id, pinned=pin or s.pinned) if s.id == sta.id else s
        for s in world.stations
    )
    return replace(world, aps=_with_associations(world.aps, stations), stations=stations)


def phase_rank(phase: str) -> int:
    return _PHASE_ORDER[phase]


def place_stations(world: WorldState, positions, config: ScenarioConfig,
                   phase: str = SETTLED) -> WorldState:
    """Teleport stations (in order) to ``positions`` and re-run SSS association."""
    positions = list(positions)
    if len(positions) != len(world.stations):
        raise SimulationError("need one position per station")
    stations = tuple(
        replace(s, position=tuple(p), phase=phase, associated_ap=None, pinned=False)
        for s, p in zip(world.stations, positions)
    )
    stations = _reassociate(world.aps, stations, config)
    return replace(world, aps=_with_associations(world.aps, stations), stations=stations)
