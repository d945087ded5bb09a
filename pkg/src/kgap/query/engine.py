"""Evaluation of parsed queries over a :class:`~kgap.kg.Graph`."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..kg.graph import Graph
from ..kg.terms import IRI, Literal, Variable, sort_key
from .parser import Aggregate, OrderKey, Query


class EvaluationError(ValueError):
    pass


class OrderingError(EvaluationError):
    """Raised when one sort column mixes incomparable kinds of term."""


@dataclass
class BindingTable:
    columns: list = field(default_factory=list)  # variable names
    rows: list = field(default_factory=list)  # tuples of Term | None

    def __post_init__(self):
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise EvaluationError(f"row {row!r} does not have {width} entries")

    def __len__(self):
        return len(self.rows)

    def index(self, name) -> int:
        name = name.name if isinstance(name, Variable) else name
        try:
            return self.columns.index(name)
        except ValueError:
            raise EvaluationError(f"no column {name!r}") from None

    def column(self, name) -> list:
        i = self.index(name)
        return [r[i] for r in self.rows]

    def dicts(self) -> list[dict]:
        return [dict(zip(self.columns, r)) for r in self.rows]

    def to_python(self) -> list[tuple]:
        """Rows with literals unwrapped to Python values and IRIs to strings."""
        def conv(t):
            if isinstance(t, Literal):
                return t.value
            if isinstance(t, IRI):
                return t.value
            return t
        return [tuple(conv(t) for t in r) for r in self.rows]


def _name(v) -> str:
    return v.name if isinstance(v, Variable) else v


def _join_order(bgp) -> list:
    """Greedy plan: repeatedly take the pattern with the most bound positions.

    Which variables are bound depends only on the depth of the join, not on
    the data, so the order is fixed once per query. Ties keep textual order.
    """
    remaining = list(bgp)
    bound: set = set()
    plan = []
    while remaining:
        def score(k):
            return (sum(1 for t in remaining[k] if not isinstance(t, Variable) or t in bound), -k)
        pattern = remaining.pop(max(range(len(remaining)), key=score))
        plan.append(pattern)
        bound.update(t for t in pattern if isinstance(t, Variable))
    return plan


def solve_bgp(graph: Graph, bgp) -> BindingTable:
    """All solutions of a basic graph pattern (natural join, duplicates kept)."""
    if not bgp:
        raise EvaluationError("empty basic graph pattern")
    variables: dict[Variable, None] = {}
    for pattern in bgp:
        for t in pattern:
            if isinstance(t, Variable):
                variables[t] = None
    columns = list(variables)
    plan = _join_order(bgp)
    depth = len(plan)
    rows: list[tuple] = []

    def extend(binding: dict, level: int):
        if level == depth:
            rows.append(tuple(binding[v] for v in columns))
            return
        pattern = plan[level]
        resolved = [binding.get(t) if isinstance(t, Variable) else t for t in pattern]
        for triple in graph.match(*resolved):
            new = binding
            ok = True
            for term, value in zip(pattern, triple):
                if isinstance(term, Variable):
                    bound = new.get(term)
                    if bound is None:
                        if new is binding:
                            new = dict(binding)
                        new[term] = value
                    elif bound != value:
                        ok = False
                        break
            if ok:
                extend(new, level + 1)

    extend({}, 0)
    return BindingTable([v.name for v in columns], rows)


def group_aggregate(table: BindingTable, group_by, aggregates) -> BindingTable:
    """Group rows and compute COUNT aggregates.

    Output columns are the group keys, then aggregate aliases, then every
    other input column carried with the value from the group's first row.
    Without group keys all rows form one group.
    """
    key_idx = [table.index(v) for v in group_by]
    agg_idx = []
    for agg in aggregates:
        if agg.func != "COUNT":
            raise EvaluationError(f"unsupported aggregate {agg.func}")
        agg_idx.append(table.index(agg.var))
    key_names = [_name(v) for v in group_by]
    alias_names = [_name(a.alias) for a in aggregates]
    carried = [i for i, c in enumerate(table.columns) if c not in key_names and c not in alias_names]

    groups: dict[tuple, list] = {}
    for row in table.rows:
        groups.setdefault(tuple(row[i] for i in key_idx), []).append(row)
    if not key_idx and not groups:
        groups[()] = []

    out_rows = []
    for key, members in groups.items():
        counts = tuple(
            Literal(str(sum(1 for r in members if r[i] is not None)), "integer") for i in agg_idx
        )
        first = members[0] if members else None
        carry = tuple(first[i] if first is not None else None for i in carried)
        out_rows.append(key + counts + carry)
    columns = key_names + alias_names + [table.columns[i] for i in carried]
    return BindingTable(columns, out_rows)


def _kind(term) -> str | None:
    if term is None:
        return None
    if isinstance(term, IRI):
        return "iri"
    if isinstance(term, Literal):
        return "number" if term.is_numeric else term.datatype
    raise OrderingError(f"cannot order on {term!r}")


def _typed_key(values: list, column: str):
    kinds = {_kind(v) for v in values} - {None}
    if len(kinds) > 1:
        raise OrderingError(f"column {column!r} mixes {', '.join(sorted(kinds))}")
    kind = kinds.pop() if kinds else None

    def key(term):
        if term is None:
            return (0, 0)
        if kind == "iri":
            return (1, term.value)
        if kind in ("number", "boolean"):
            return (1, term.value)
        return (1, term.lexical)
    return key


def order_results(table: BindingTable, keys) -> BindingTable:
    """Stable multi-key sort. ``keys`` holds OrderKey or (var, descending) pairs."""
    rows = list(table.rows)
    for k in reversed(list(keys)):
        var, descending = (k.var, k.descending) if isinstance(k, OrderKey) else k
        i = table.index(var)
        keyf = _typed_key([r[i] for r in rows], table.columns[i])
        rows.sort(key=lambda r: keyf(r[i]), reverse=descending)
    return BindingTable(list(table.columns), rows)


def _tiebreak(table: BindingTable, names: list) -> BindingTable:
    idx = [table.index(n) for n in names]
    rows = sorted(table.rows, key=lambda r: tuple(sort_key(r[i]) for i in idx))
    return BindingTable(list(table.columns), rows)


def evaluate(graph: Graph, query: Query, keep_carried: bool = False) -> BindingTable:
    """Run ``query`` against ``graph``.

    After the explicit ORDER BY keys, rows are ordered by the group keys
    (or, for ungrouped queries, the projected columns) ascending, so the
    result order is fully determined.  With ``keep_carried`` the columns
    not named in SELECT are appended after the projected ones.
    """
    table = solve_bgp(graph, query.bgp)
    aggregates = query.aggregates
    grouped = bool(aggregates or query.group_by)
    if grouped:
        table = group_aggregate(table, query.group_by, aggregates)
    projected = [_name(p.alias) if isinstance(p, Aggregate) else p.name for p in query.projection]
    implicit = [v.name for v in query.group_by] if grouped else projected
    table = _tiebreak(table, implicit)
    table = order_results(table, query.order_by)

    columns = list(projected)
    if keep_carried:
        columns += [c for c in table.columns if c not in projected]
    idx = [table.index(c) for c in columns]
    return BindingTable(columns, [tuple(r[i] for i in idx) for r in table.rows])
