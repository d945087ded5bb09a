"""CSV export of metrics, gain reports, decisions and overhead measurements.

Column orders are fixed; see the ``*_COLUMNS`` constants.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path

from .runner import GainReport, MetricsRecord, StationGain

RECORD_COLUMNS = ["time", "station", "ap", "technology", "throughput", "strategy", "event"]
GAIN_COLUMNS = ["station", "strategy", "selection_time", "mean_before", "mean_after",
                "gain_percent", "sss_mean_before", "sss_mean_after", "sss_gain_percent"]
DECISION_COLUMNS = ["time", "station", "strategy", "previous_ap", "chosen_ap", "rule", "ranking"]
OVERHEAD_COLUMNS = ["station_count", "repetition", "kb_triple_count", "elapsed_ms"]


class ExportError(OSError):
    pass


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _short(iri) -> str:
    return "" if iri is None else iri.value.rsplit("/", 1)[-1]


def to_csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _write(path, text: str):
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise ExportError(f"cannot write {path}: {e.strerror or e}") from e
    return path


def record_rows(records):
    for r in records:
        yield (r.time, r.station, r.ap, r.technology, r.throughput, r.strategy, r.event)


def gain_rows(report: GainReport):
    for g in report.stations:
        yield (g.station, g.strategy, g.selection_time, g.mean_before, g.mean_after,
               g.gain_percent, g.sss_mean_before, g.sss_mean_after, g.sss_gain_percent)


def decision_rows(decisions):
    for t, d, previous in decisions:
        ranking = ";".join(
            _short(ap) + "=" + "/".join(_fmt(k) for k in key) for ap, key in d.ranked_candidates
        )
        yield (t, _short(d.station), d.strategy, _short(previous), _short(d.chosen_ap),
               d.rule or "", ranking)


def export_csv(data, path, kind: str | None = None):
    """Write records, a GainReport, decisions or an OverheadReport to ``path``."""
    from .bench import OverheadReport

    if isinstance(data, GainReport):
        return _write(path, to_csv_text(GAIN_COLUMNS, gain_rows(data)))
    if isinstance(data, OverheadReport):
        return _write(path, to_csv_text(OVERHEAD_COLUMNS, data.rows))
    data = list(data)
    if kind == "decisions" or (data and isinstance(data[0], tuple) and len(data[0]) == 3):
        return _write(path, to_csv_text(DECISION_COLUMNS, decision_rows(data)))
    return _write(path, to_csv_text(RECORD_COLUMNS, record_rows(data)))


def read_records(path) -> list[MetricsRecord]:
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != RECORD_COLUMNS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [
            MetricsRecord(int(r["time"]), r["station"], r["ap"], r["technology"],
                          float(r["throughput"]), r["strategy"], r["event"])
            for r in reader
        ]


def read_gains(path) -> list[StationGain]:
    def opt(v):
        return float(v) if v != "" else None

    with open(path, encoding="utf-8", newline="") as f:
        return [
            StationGain(r["station"], r["strategy"], int(r["selection_time"]),
                        float(r["mean_before"]), float(r["mean_after"]), float(r["gain_percent"]),
                        opt(r["sss_mean_before"]), opt(r["sss_mean_after"]), opt(r["sss_gain_percent"]))
            for r in csv.DictReader(f)
        ]
