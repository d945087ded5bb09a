"""Hand-built worlds for selection and harness tests."""
from kgap.sim.config import APSpec, ScenarioConfig
from kgap.sim.world import associate, init_world, place_stations


def wifi(ap_id, pos, bw=20.0, tx=20.0, gain=5.0, rng=75.0):
    return APSpec(ap_id, "WiFi", pos, rng, bw, tx, gain)


def lte(ap_id, pos, bw=10.0, tx=43.0, gain=15.0, rng=1000.0):
    return APSpec(ap_id, "LTE", pos, rng, bw, tx, gain)


def sat(ap_id, pos, bw=10.0, tx=50.0, gain=30.0, rng=1000.0):
    return APSpec(ap_id, "Satellite", pos, rng, bw, tx, gain)


def build(aps, positions, assoc=None, noise=0.0, services=(), **kw):
    """A world with stations at ``positions``; ``assoc`` pins station -> AP ids."""
    cfg = ScenarioConfig(aps=tuple(aps), station_count=len(positions), sara_station_count=0,
                         bandwidth_noise=noise, services=tuple(services), **kw)
    world = place_stations(init_world(cfg), positions, cfg)
    for sta, ap in (assoc or {}).items():
        world = associate(world, sta, ap)
    return cfg, world


def video_fixture():
    """Video station on an idle WiFi AP; the LTE tower carries two others."""
    return build([wifi("ap1", (10.0, 10.0)), lte("lte1", (150.0, 150.0))],
                 [(12.0, 10.0), (140.0, 150.0), (160.0, 150.0)],
                 assoc={"sta1": "ap1", "sta2": "lte1", "sta3": "lte1"},
                 services=(("sta1", ("video",)),))


def three_ap_fixture():
    """Three WiFi APs around sta1 that tie on count, two of them also on bandwidth."""
    return build([wifi("apA", (20.0, 20.0)), wifi("apB", (40.0, 20.0), gain=7.0),
                  wifi("apC", (30.0, 40.0), bw=5.0)],
                 [(30.0, 25.0), (22.0, 20.0), (38.0, 20.0)],
                 assoc={"sta1": "apC", "sta2": "apA", "sta3": "apB"})
