"""Access point selection strategies and the knowledge-base snapshot generator."""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional, Sequence

from .kg import vocab
from .kg.graph import Graph, Triple
from .kg.terms import IRI, Literal, literal
from .query import evaluate, parse_query
from .query.parser import Query
from .rules import Rule, apply_rules, constrain_candidates
from .sim.config import ScenarioConfig
from .sim.world import (
    AccessPointState,
    StationState,
    WorldState,
    achievable_throughput,
    associate,
    in_range,
    measure_bandwidth,
    rssi,
)

# the station IRI the query text is written against
QUERY_STATION = vocab.toco("sta1")
RANKING_QUERY_ASSET = "ranking.rq"


class SelectionError(RuntimeError):
    pass


class NoAccessPointInRange(SelectionError):
    pass


class QueryFault(SelectionError):
    """The ranking query produced a result inconsistent with the snapshot."""


@dataclass(frozen=True)
class SelectionDecision:
    station: IRI
    chosen_ap: IRI
    strategy: str
    ranked_candidates: tuple  # ((ap IRI, sort-key tuple), ...), best first
    elapsed: float = 0.0  # ms
    rule: Optional[str] = None
    kb_size: int = 0


def ranking_query_text() -> str:
    return resources.files("kgap.assets").joinpath(RANKING_QUERY_ASSET).read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def ranking_query() -> Query:
    return parse_query(ranking_query_text())


def _node(kind: str, *parts) -> IRI:
    return vocab.toco("/".join([kind, *(p.value.rsplit("/", 1)[-1] for p in parts)]))


def kb_snapshot(world: WorldState, target, config: ScenarioConfig,
                bandwidths: Optional[dict] = None) -> Graph:
    """Materialise the network state seen from ``target`` as a knowledge graph.

    For every AP in range of the target the graph holds its type, technology,
    WLAN node (antenna gain, transmit power), the stations in its range, and
    association nodes linked through ``associatedStations``: one per station
    currently associated with the AP plus one probe association carrying the
    bandwidth measured from the target.  All association nodes point ``From``
    the AP ``To`` the target and share the probe's bandwidth node, so the
    ranking query's COUNT over them is the AP's current load plus one.
    """
    sta = world.station(target)
    g = Graph()
    add = g.insert
    add(Triple(sta.id, vocab.RDF_TYPE, vocab.USER_EQUIPMENT))
    for k, tag in enumerate(sta.services, start=1):
        svc = vocab.toco(f"svc/{sta.id.value.rsplit('/', 1)[-1]}/{k}")
        add(Triple(sta.id, vocab.HAS_SERVICE, svc))
        add(Triple(svc, vocab.RDF_TYPE, vocab.SERVICE))
        add(Triple(svc, vocab.IS_VIDEO, literal(tag == "video")))
    for ap in world.aps:
        if not in_range(ap, sta):
            continue
        add(Triple(ap.id, vocab.RDF_TYPE, vocab.ACCESS_POINT))
        add(Triple(ap.id, vocab.USES_TECHNOLOGY, vocab.TECHNOLOGIES[ap.technology]))
        for other in world.stations:
            if in_range(ap, other):
                add(Triple(ap.id, vocab.STATIONS_IN_RANGE, other.id))
        wlan = _node("wlan", ap.id)
        add(Triple(ap.id, vocab.HAS_WLAN, wlan))
        add(Triple(wlan, vocab.RDF_TYPE, vocab.WLAN))
        add(Triple(wlan, vocab.ANTENNA_GAIN, literal(float(ap.antenna_gain))))
        add(Triple(wlan, vocab.HAS_TX_POWER, literal(float(ap.tx_power))))
        if bandwidths is not None and ap.id in bandwidths:
            bw_value = bandwidths[ap.id]
        else:
            bw_value = measure_bandwidth(world, sta, ap, config)
        bw = _node("bw", ap.id, sta.id)
        add(Triple(bw, vocab.HAS_VALUE, literal(float(bw_value))))
        nodes = [_node("probe", ap.id, sta.id)]
        nodes += [_node("asso", ap.id, s) for s in sorted(ap.associated, key=lambda i: i.value)]
        for node in nodes:
            add(Triple(ap.id, vocab.ASSOCIATED_STATIONS, node))
            add(Triple(node, vocab.RDF_TYPE, vocab.ASSOCIATION))
            add(Triple(node, vocab.FROM, ap.id))
            add(Triple(node, vocab.TO, sta.id))
            add(Triple(node, vocab.HAS_BANDWIDTH, bw))
    return g


def _candidates(world: WorldState, sta: StationState, technologies=None) -> list[AccessPointState]:
    aps = [ap for ap in world.aps if in_range(ap, sta)]
    if technologies is not None:
        aps = [ap for ap in aps if ap.technology in technologies]
    if not aps:
        raise NoAccessPointInRange(f"no access point in range of {sta.id}")
    return aps


def _rank_by(aps, key) -> list:
    # stable sort over IRI order: equal keys fall back to the smaller IRI
    return sorted(aps, key=key)


def select_sss(world: WorldState, sta_id, config: ScenarioConfig,
               technologies: Optional[Sequence[str]] = None) -> SelectionDecision:
    """Strongest received signal; ties go to the smaller AP IRI."""
    t0 = time.perf_counter()
    sta = world.station(sta_id)
    scored = [(ap, rssi(ap, sta, config)) for ap in _candidates(world, sta, technologies)]
    ranked = _rank_by(scored, lambda x: -x[1])
    return SelectionDecision(sta.id, ranked[0][0].id, "SSS",
                             tuple((ap.id, (r,)) for ap, r in ranked),
                             (time.perf_counter() - t0) * 1e3)


def select_random(world: WorldState, sta_id, rng, config: Optional[ScenarioConfig] = None) -> SelectionDecision:
    t0 = time.perf_counter()
    sta = world.station(sta_id)
    aps = _candidates(world, sta)
    chosen = aps[rng.randrange(len(aps))]
    ranked = [chosen] + [ap for ap in aps if ap is not chosen]
    return SelectionDecision(sta.id, chosen.id, "Random", tuple((ap.id, ()) for ap in ranked),
                             (time.perf_counter() - t0) * 1e3)


def select_omniscient(world: WorldState, sta_id, config: ScenarioConfig) -> SelectionDecision:
    """Best noise-free post-join throughput; ties go to the smaller AP IRI."""
    t0 = time.perf_counter()
    sta = world.station(sta_id)
    scored = [(ap, achievable_throughput(ap, sta, True, config)) for ap in _candidates(world, sta)]
    ranked = _rank_by(scored, lambda x: -x[1])
    return SelectionDecision(sta.id, ranked[0][0].id, "Omniscient",
                             tuple((ap.id, (v,)) for ap, v in ranked),
                             (time.perf_counter() - t0) * 1e3)


def _num(term) -> float:
    if not isinstance(term, Literal) or not term.is_numeric:
        raise QueryFault(f"expected a numeric literal, got {term!r}")
    return float(term.value) if term.datatype == "decimal" else term.value


def rank_access_points(kb: Graph, target: IRI, query: Optional[Query] = None) -> list:
    """Evaluate the ranking query for ``target``; returns [(ap, (cnt, bw, gain, tx)), ...]."""
    q = (query or ranking_query()).substitute({QUERY_STATION: target})
    table = evaluate(kb, q, keep_carried=True)
    cols = [table.index(c) for c in ("aps", "cnt", "bwValue", "g", "tx")]
    ranked = []
    for row in table.rows:
        ap, cnt, bw, g, tx = (row[i] for i in cols)
        ranked.append((ap, (_num(cnt), _num(bw), _num(g), _num(tx))))
    return ranked


def select_sara(world: WorldState, sta_id, config: ScenarioConfig,
                rules: Sequence[Rule] = (), query: Optional[Query] = None) -> SelectionDecision:
    """Scan, probe, snapshot, query and choose; ``elapsed`` covers the whole circle."""
    t0 = time.perf_counter()
    sta = world.station(sta_id)
    aps = _candidates(world, sta)
    bandwidths = {ap.id: measure_bandwidth(world, sta, ap, config) for ap in aps}
    kb = kb_snapshot(world, sta.id, config, bandwidths)
    ranked = rank_access_points(kb, sta.id, query)
    if sorted(ap.value for ap, _ in ranked) != sorted(ap.id.value for ap in aps):
        raise QueryFault(f"ranking for {sta.id} does not cover the APs in range")
    rule_name = None
    if rules:
        mine = [a for a in apply_rules(kb, rules) if a.station == sta.id]
        if mine:
            keep = constrain_candidates([ap for ap, _ in ranked], mine[0], kb)
            if keep:
                rule_name = mine[0].rule_name
                keep_set = set(keep)
                ranked = [r for r in ranked if r[0] in keep_set]
    elapsed = (time.perf_counter() - t0) * 1e3
    return SelectionDecision(sta.id, ranked[0][0], "SARA", tuple(ranked), elapsed, rule_name, len(kb))


def select(strategy: str, world: WorldState, sta_id, config: ScenarioConfig,
           rng=None, rules: Sequence[Rule] = ()) -> SelectionDecision:
    if strategy == "SARA":
        return select_sara(world, sta_id, config, rules)
    if strategy == "SSS":
        return select_sss(world, sta_id, config)
    if strategy == "Omniscient":
        return select_omniscient(world, sta_id, config)
    if strategy == "Random":
        if rng is None:
            raise SelectionError("Random selection needs an rng")
        return select_random(world, sta_id, rng)
    raise SelectionError(f"unknown strategy {strategy!r}")


def apply_decision(world: WorldState, decision: SelectionDecision) -> WorldState:
    """Hand the station over to the chosen AP; a no-op when it is already there."""
    sta = world.station(decision.station)
    if sta.associated_ap == decision.chosen_ap:
        return world
    return associate(world, decision.station, decision.chosen_ap, pin=True)
