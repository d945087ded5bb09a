"""Scenario runner and throughput-gain analysis."""
from __future__ import annotations

import logging
import random
import statistics
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..kg.terms import IRI
from ..rules import Rule, load_rules
from ..kg import vocab
from ..selection import SelectionDecision, apply_decision, select
from ..sim.config import ScenarioConfig
from ..sim.world import WorldState, init_world, station_throughput, step

log = logging.getLogger(__name__)

TICK, SELECTION_EXECUTED = "tick", "selection_executed"


class GainError(ValueError):
    pass


@dataclass(frozen=True)
class MetricsRecord:
    time: int
    station: str
    ap: str  # empty when unassociated
    technology: str
    throughput: float  # Mbit/s
    strategy: str
    event: str = TICK


@dataclass(frozen=True)
class StationGain:
    station: str
    strategy: str
    selection_time: int
    mean_before: float
    mean_after: float
    gain_percent: float
    # the same windows in a run where every station keeps SSS
    sss_mean_before: Optional[float] = None
    sss_mean_after: Optional[float] = None
    sss_gain_percent: Optional[float] = None


@dataclass
class GainReport:
    settle_complete: Optional[int] = None
    stations: list = field(default_factory=list)  # StationGain

    @property
    def gains(self) -> list[float]:
        return [s.gain_percent for s in self.stations]

    @property
    def sss_gains(self) -> list[float]:
        return [s.sss_gain_percent for s in self.stations if s.sss_gain_percent is not None]

    @property
    def median_gain(self) -> Optional[float]:
        return statistics.median(self.gains) if self.stations else None

    @property
    def median_sss_gain(self) -> Optional[float]:
        g = self.sss_gains
        return statistics.median(g) if g else None

    @property
    def fraction_doubled(self) -> Optional[float]:
        if not self.stations:
            return None
        return sum(1 for g in self.gains if g >= 200.0) / len(self.stations)


@dataclass
class RunResult:
    records: list
    report: GainReport
    decisions: list  # (time, SelectionDecision, previous AP IRI or None)
    schedule: dict  # station IRI value -> selection time


def _short(iri: Optional[IRI]) -> str:
    return "" if iri is None else iri.value.rsplit("/", 1)[-1]


def compute_gain(records: Sequence[MetricsRecord], station: str, selection_time: int,
                 start: Optional[int] = None, end: Optional[int] = None) -> float:
    """100 x mean throughput after / before ``selection_time``.

    The before window is [start, selection_time), the after window
    (selection_time, end]; the selection tick itself is excluded.
    """
    before, after = _windows(records, station, selection_time, start, end)
    return _ratio(before, after, station)


def _windows(records, station, t_sel, start=None, end=None):
    before, after = [], []
    for r in records:
        if r.station != station:
            continue
        if r.time < t_sel and (start is None or r.time >= start):
            before.append(r.throughput)
        elif r.time > t_sel and (end is None or r.time <= end):
            after.append(r.throughput)
    return before, after


def _ratio(before, after, station) -> float:
    if not before or not after:
        raise GainError(f"{station}: empty before or after window")
    mean_before = statistics.fmean(before)
    if mean_before <= 0:
        raise GainError(f"{station}: zero baseline throughput")
    return 100.0 * statistics.fmean(after) / mean_before


def _record_tick(world: WorldState, config: ScenarioConfig, executed: set) -> list:
    out = []
    for s in world.stations:
        ap = world.ap(s.associated_ap) if s.associated_ap is not None else None
        name = _short(s.id)
        out.append(MetricsRecord(
            world.clock, name, _short(s.associated_ap),
            ap.technology if ap is not None else "",
            station_throughput(world, s, config),
            s.strategy,
            SELECTION_EXECUTED if name in executed else TICK,
        ))
    return out


def _simulate(config: ScenarioConfig, rules: Sequence[Rule], execute: bool,
              schedule: Optional[dict] = None):
    world = init_world(config)
    sel_rng = random.Random(f"{config.seed}/selection")
    strategy_rng = random.Random(f"{config.seed}/strategy")
    records: list = []
    decisions: list = []
    settle_complete = None
    chosen = [s.id for s in world.stations if s.strategy != "SSS"]
    clock_end = config.duration
    while world.clock + config.tick <= clock_end:
        world = step(world, config)
        if settle_complete is None and world.all_settled():
            settle_complete = world.clock
            if schedule is None:
                lo = settle_complete + config.selection_start_margin
                hi = config.duration - config.selection_end_margin
                schedule = {}
                if lo <= hi:
                    for sid in chosen:
                        schedule[sid.value] = lo + sel_rng.randrange(0, hi - lo + 1, config.tick)
        executed = set()
        if execute and schedule:
            for sid in chosen:
                if schedule.get(sid.value) != world.clock:
                    continue
                sta = world.station(sid)
                decision = select(sta.strategy, world, sid, config, rng=strategy_rng, rules=rules)
                decisions.append((world.clock, decision, sta.associated_ap))
                world = apply_decision(world, decision)
                executed.add(_short(sid))
        records.extend(_record_tick(world, config, executed))
    return records, decisions, settle_complete, schedule or {}


def run_scenario(config: ScenarioConfig, rules: Optional[Sequence[Rule]] = None,
                 control: bool = True) -> RunResult:
    """Simulate ``config``; stations assigned a non-SSS strategy execute it once,
    at a random time after every station has settled.

    With ``control`` the same seed is replayed with no selections executed and
    each executing station's gain over the same windows is reported as its SSS
    baseline.
    """
    config.validate()
    if rules is None:
        techs = list(vocab.TECHNOLOGIES.values())
        rules = load_rules(config.rules, techs) if config.rules else ()
    records, decisions, settle, schedule = _simulate(config, rules, execute=True)
    report = GainReport(settle_complete=settle)
    if not schedule:
        return RunResult(records, report, decisions, schedule)
    control_records = None
    if control:
        control_records, _, _, _ = _simulate(config, rules, execute=False, schedule=schedule)
    strategies = {}
    for r in records:
        strategies.setdefault(r.station, r.strategy)
    for sid in sorted(schedule, key=lambda s: int(_short(IRI(s))[3:])):
        name = _short(IRI(sid))
        t_sel = schedule[sid]
        before, after = _windows(records, name, t_sel, settle, config.duration)
        gain = _ratio(before, after, name)
        sss = (None, None, None)
        if control_records is not None:
            cb, ca = _windows(control_records, name, t_sel, settle, config.duration)
            sss = (statistics.fmean(cb), statistics.fmean(ca), _ratio(cb, ca, name))
        report.stations.append(StationGain(
            name, strategies[name], t_sel, statistics.fmean(before), statistics.fmean(after),
            gain, *sss,
        ))
    return RunResult(records, report, decisions, schedule)
