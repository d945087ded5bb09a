"""Selection-circle overhead versus network size."""
from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from ..selection import select_sara
from ..sim.config import ScenarioConfig, paper_default
from ..sim.world import init_world, place_stations


@dataclass
class OverheadReport:
    rows: list = field(default_factory=list)  # (station_count, repetition, kb_triple_count, elapsed_ms)

    def sizes(self) -> list[int]:
        return sorted({r[0] for r in self.rows})

    def elapsed(self, size: int) -> list[float]:
        return [r[3] for r in self.rows if r[0] == size]

    def median_elapsed(self, size: int) -> float:
        return statistics.median(self.elapsed(size))

    def triples(self, size: int) -> int:
        return statistics.median_low([r[2] for r in self.rows if r[0] == size])

    def scaling_ratio(self) -> float:
        s = self.sizes()
        return self.median_elapsed(s[-1]) / self.median_elapsed(s[0])


def settled_world(config: ScenarioConfig, seed: int = 0):
    """All stations spread uniformly over the settle rectangle, associated by SSS."""
    world = init_world(config)
    rng = random.Random(f"{seed}/bench/{config.station_count}")
    (x0, y0), (x1, y1) = config.incident.settle
    positions = [(rng.uniform(x0, x1), rng.uniform(y0, y1)) for _ in world.stations]
    return place_stations(world, positions, config)


def bench_overhead(sizes: Sequence[int], repetitions: int = 10, seed: int = 0,
                   config: Optional[ScenarioConfig] = None) -> OverheadReport:
    """Time ``repetitions`` full selection circles on a random station per network size."""
    if not sizes:
        raise ValueError("sizes must not be empty")
    base = config or paper_default()
    report = OverheadReport()
    for n in sizes:
        cfg = replace(base, station_count=n, sara_station_count=0, services=(), seed=seed)
        world = settled_world(cfg, seed)
        rng = random.Random(f"{seed}/bench-pick/{n}")
        # one untimed circle warms caches (query parse, imports)
        select_sara(world, world.stations[0].id, cfg)
        for rep in range(repetitions):
            sta = world.stations[rng.randrange(len(world.stations))]
            d = select_sara(world, sta.id, cfg)
            report.rows.append((n, rep, d.kb_size, d.elapsed))
    return report
