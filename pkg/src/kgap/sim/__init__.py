from .config import APSpec, ConfigError, Incident, ScenarioConfig, load_scenario, paper_default
from .world import (
    GATHER,
    SETTLED,
    UNREACHABLE,
    WANDER,
    AccessPointState,
    OutOfRangeError,
    SimulationError,
    StationState,
    WorldState,
    achievable_throughput,
    aps_in_range,
    associate,
    in_range,
    init_world,
    measure_bandwidth,
    rssi,
    station_throughput,
    step,
)

__all__ = [
    "APSpec",
    "AccessPointState",
    "ConfigError",
    "GATHER",
    "Incident",
    "OutOfRangeError",
    "SETTLED",
    "ScenarioConfig",
    "SimulationError",
    "StationState",
    "UNREACHABLE",
    "WANDER",
    "WorldState",
    "achievable_throughput",
    "aps_in_range",
    "associate",
    "in_range",
    "init_world",
    "load_scenario",
    "measure_bandwidth",
    "paper_default",
    "rssi",
    "station_throughput",
    "step",
]
