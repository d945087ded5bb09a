"""Compare the compiled and pure-Python radio kernels.

    python benchmarks/bench_radio.py [--stations 27 --aps 11 --repeat 200]

Reports the raw strongest-AP sweep and a full paper_default scenario run
under each backend, and checks both backends agree bit for bit.
"""
import argparse
import random
import time
from array import array

from kgap.harness.runner import run_scenario
from kgap.sim import paper_default, radio


def sweep_inputs(n, m, seed=0):
    rng = random.Random(seed)
    sx = array("d", (rng.uniform(0, 300) for _ in range(n)))
    sy = array("d", (rng.uniform(0, 300) for _ in range(n)))
    ax = array("d", (rng.uniform(0, 300) for _ in range(m)))
    ay = array("d", (rng.uniform(0, 300) for _ in range(m)))
    rng_ = array("d", (rng.choice([75.0, 1000.0]) for _ in range(m)))
    eirp = array("d", (rng.uniform(20, 80) for _ in range(m)))
    allowed = array("B", [1] * m)
    return sx, sy, ax, ay, rng_, eirp, allowed


def time_sweep(backend, inputs, repeat):
    k = radio.kernels(backend)
    out = array("l", [0] * len(inputs[0]))
    t0 = time.perf_counter()
    for _ in range(repeat):
        k.strongest(*inputs, 40.0, 3.5, out)
    return (time.perf_counter() - t0) / repeat, list(out)


def time_run(backend, seed):
    previous = radio.set_backend(backend)
    try:
        t0 = time.perf_counter()
        result = run_scenario(paper_default().with_seed(seed), control=False)
        return time.perf_counter() - t0, result
    finally:
        radio.set_backend(previous)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--stations", type=int, default=27)
    ap.add_argument("--aps", type=int, default=11)
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    try:
        radio.kernels("compiled")
    except ImportError:
        print("compiled kernel not built; only the Python fallback is available")
        return

    for n in (args.stations, args.stations * 10, args.stations * 100):
        inputs = sweep_inputs(n, args.aps)
        tc, oc = time_sweep("compiled", inputs, args.repeat)
        tp, op = time_sweep("python", inputs, max(1, args.repeat // 10))
        assert oc == op, "backends disagree"
        print(f"sweep {n:6d} x {args.aps:3d}: compiled {tc * 1e6:10.1f} us  "
              f"python {tp * 1e6:10.1f} us  speedup {tp / tc:6.1f}x")

    tc, rc = time_run("compiled", args.seed)
    tp, rp = time_run("python", args.seed)
    same = rc.records == rp.records and rc.report.gains == rp.report.gains
    print(f"paper_default run (seed {args.seed}): compiled {tc:.3f} s  python {tp:.3f} s  "
          f"speedup {tp / tc:.2f}x  identical={same}")


if __name__ == "__main__":
    main()
