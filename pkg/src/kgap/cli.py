"""Command line interface.

Exit status: 0 on success, 1 on invalid input (scenario, KB, query or rule
files), 2 on runtime errors.
"""
from __future__ import annotations

import argparse
import logging
import re
import sys
from pathlib import Path

from .kg import vocab
from .kg.ntriples import NTriplesError, load_ntriples
from .kg.terms import TermError
from .query import evaluate, parse_query
from .query.parser import QueryStructureError, QuerySyntaxError, UnknownPrefixError
from .rules import RuleError, load_rules
from .sim.config import ConfigError, load_scenario

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2
_INPUT_ERRORS = (ConfigError, NTriplesError, QuerySyntaxError, UnknownPrefixError,
                 QueryStructureError, RuleError, TermError)


def parse_range(text: str) -> list[int]:
    """``a..b:step`` (inclusive), ``a..b`` or a comma list."""
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*(?::\s*(\d+))?\s*", text)
    if m:
        a, b, s = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
        if s <= 0 or a > b:
            raise argparse.ArgumentTypeError(f"bad range {text!r}")
        return list(range(a, b + 1, s))
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad station list {text!r}") from None
    if not values or min(values) <= 0:
        raise argparse.ArgumentTypeError(f"bad station list {text!r}")
    return values


def cmd_run(args) -> int:
    from .harness.export import export_csv
    from .harness.runner import run_scenario

    config = load_scenario(args.scenario)
    if args.seed is not None:
        config = config.with_seed(args.seed)
    rules = None
    if args.rules:
        rules = load_rules(args.rules, list(vocab.TECHNOLOGIES.values()))
    result = run_scenario(config, rules=rules, control=not args.no_control)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    export_csv(result.records, out / "records.csv")
    export_csv(result.report, out / "gains.csv")
    export_csv(result.decisions, out / "decisions.csv", kind="decisions")
    rep = result.report
    print(f"{len(result.records)} records, {len(result.decisions)} selections -> {out}")
    if rep.stations:
        print(f"median gain {rep.median_gain:.2f}%  "
              f"stations doubled {rep.fraction_doubled:.4f}  "
              f"median SSS control {rep.median_sss_gain if rep.median_sss_gain is not None else float('nan'):.2f}%")
    return EXIT_OK


def cmd_query(args) -> int:
    from .harness.export import to_csv_text

    kb = load_ntriples(Path(args.kb).read_text(encoding="utf-8"))
    query = parse_query(Path(args.query).read_text(encoding="utf-8"))
    table = evaluate(kb, query)
    rows = [["" if t is None else str(t) for t in row] for row in table.rows]
    sys.stdout.write(to_csv_text(table.columns, rows))
    return EXIT_OK


def cmd_bench(args) -> int:
    from .harness.bench import bench_overhead
    from .harness.export import export_csv

    config = load_scenario(args.scenario) if args.scenario else None
    report = bench_overhead(args.stations, args.reps, seed=args.seed, config=config)
    export_csv(report, args.out)
    for n in report.sizes():
        print(f"{n:5d} stations  {report.triples(n):6d} triples  median {report.median_elapsed(n):8.3f} ms")
    print(f"scaling ratio {report.sizes()[-1]}/{report.sizes()[0]}: {report.scaling_ratio():.2f}")
    return EXIT_OK


def cmd_validate(args) -> int:
    config = load_scenario(args.scenario)
    if config.rules:
        load_rules(config.rules, list(vocab.TECHNOLOGIES.values()))
    print(f"{args.scenario}: ok ({len(config.aps)} APs, {config.station_count} stations)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kgap", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate a scenario and write CSV metrics")
    run.add_argument("--scenario", required=True, help="scenario file or bundled name")
    run.add_argument("--seed", type=int, help="override the scenario seed")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--rules", help="rule file to apply during SARA selection")
    run.add_argument("--no-control", action="store_true", help="skip the all-SSS control replay")
    run.set_defaults(func=cmd_run)

    q = sub.add_parser("query", help="evaluate a query file over an N-Triples KB")
    q.add_argument("--kb", required=True)
    q.add_argument("--query", required=True)
    q.set_defaults(func=cmd_query)

    b = sub.add_parser("bench-overhead", help="time selection circles versus network size")
    b.add_argument("--stations", type=parse_range, default=parse_range("10..100:10"),
                   help="station counts, e.g. 10..100:10")
    b.add_argument("--reps", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--scenario", help="base scenario (default: paper_default)")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("validate", help="check a scenario file against the schema")
    v.add_argument("--scenario", required=True)
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:  # noqa: BLE001 - CLI boundary
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
