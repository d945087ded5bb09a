import pytest

from kgap.kg import Graph, IRI, Literal, Triple, Variable, vocab
from kgap.query import evaluate, parse_query
from kgap.query.engine import (BindingTable, EvaluationError, OrderingError, group_aggregate,
                               order_results, solve_bgp)
from kgap.query.parser import Aggregate, OrderKey
from kgap.selection import ranking_query

from oracles import brute_evaluate

T = vocab.toco
V = Variable


def num(v):
    return Literal(str(v), "integer")


def three_aps():
    triples = []
    for i, wlan in ((1, True), (2, False), (3, False)):
        ap = T(f"ap{i}")
        triples.append(Triple(ap, vocab.RDF_TYPE, vocab.ACCESS_POINT))
        if wlan:
            triples.append(Triple(ap, vocab.HAS_WLAN, T(f"wlan{i}")))
            triples.append(Triple(T(f"wlan{i}"), vocab.ANTENNA_GAIN, Literal("5.0", "decimal")))
    return triples


def test_single_pattern_three_rows():
    bgp = [(V("ap"), vocab.RDF_TYPE, vocab.ACCESS_POINT)]
    table = solve_bgp(Graph(three_aps()), bgp)
    assert sorted(table.column("ap"), key=lambda i: i.value) == [T("ap1"), T("ap2"), T("ap3")]


def test_join_on_shared_variable():
    bgp = [(V("ap"), vocab.RDF_TYPE, vocab.ACCESS_POINT), (V("ap"), vocab.HAS_WLAN, V("w"))]
    table = solve_bgp(Graph(three_aps()), bgp)
    assert table.dicts() == [{"ap": T("ap1"), "w": T("wlan1")}]


def test_absent_predicate_yields_no_rows():
    table = solve_bgp(Graph(three_aps()), [(V("ap"), T("nothing"), V("o"))])
    assert len(table) == 0 and table.columns == ["ap", "o"]


def test_repeated_variable_within_pattern():
    g = Graph([Triple(T("a"), T("p"), T("a")), Triple(T("a"), T("p"), T("b"))])
    assert solve_bgp(g, [(V("x"), T("p"), V("x"))]).rows == [(T("a"),)]


def test_empty_bgp_rejected():
    with pytest.raises(EvaluationError):
        solve_bgp(Graph(), [])


def test_group_count_hand_example():
    rows = [(T("ap1"), T("s1")), (T("ap2"), T("s2")), (T("ap1"), T("s3")),
            (T("ap1"), T("s4")), (T("ap2"), T("s5"))]
    out = group_aggregate(BindingTable(["aps", "asso"], rows), [V("aps")],
                          [Aggregate(V("asso"), V("cnt"))])
    assert [r[:2] for r in out.rows] == [(T("ap1"), num(3)), (T("ap2"), num(2))]
    # the non-grouped column is carried from each group's first row
    assert out.columns == ["aps", "cnt", "asso"]
    assert out.column("asso") == [T("s1"), T("s2")]


def test_group_empty_and_singletons():
    agg = [Aggregate(V("b"), V("n"))]
    assert group_aggregate(BindingTable(["a", "b"], []), [V("a")], agg).rows == []
    rows = [(T(f"k{i}"), T("x")) for i in range(4)]
    out = group_aggregate(BindingTable(["a", "b"], rows), [V("a")], agg)
    assert out.column("n") == [num(1)] * 4


def test_count_skips_unbound_values():
    out = group_aggregate(BindingTable(["a", "b"], [(T("k"), None), (T("k"), T("x"))]),
                          [V("a")], [Aggregate(V("b"), V("n"))])
    assert out.column("n") == [num(1)]


def test_group_unknown_aggregate_column():
    with pytest.raises(EvaluationError):
        group_aggregate(BindingTable(["a"], []), [V("a")], [Aggregate(V("zz"), V("n"))])


def test_order_hand_example():
    table = BindingTable(["cnt", "bw"], [(num(2), num(5)), (num(1), num(3)), (num(1), num(9))])
    out = order_results(table, [OrderKey(V("cnt")), OrderKey(V("bw"), True)])
    assert out.to_python() == [(1, 9), (1, 3), (2, 5)]


def test_order_single_row_and_stability():
    one = BindingTable(["a"], [(num(1),)])
    assert order_results(one, [OrderKey(V("a"))]).rows == one.rows
    rows = [(num(1), T(c)) for c in "zxy"]
    out = order_results(BindingTable(["k", "tag"], rows), [OrderKey(V("k"), True)])
    assert out.rows == rows


def test_numeric_order_is_not_lexical():
    table = BindingTable(["v"], [(Literal("10", "integer"),), (Literal("9.5", "decimal"),)])
    assert order_results(table, [OrderKey(V("v"))]).to_python()[0][0] == Literal("9.5", "decimal").value


def test_mixed_kinds_rejected():
    table = BindingTable(["v"], [(num(1),), (T("x"),)])
    with pytest.raises(OrderingError):
        order_results(table, [OrderKey(V("v"))])


def test_count_free_lookup():
    g = Graph([Triple(T("ap1"), vocab.HAS_WLAN, T("w1")),
               Triple(T("w1"), vocab.ANTENNA_GAIN, Literal("5.0", "decimal"))])
    table = evaluate(g, parse_query("SELECT ?g WHERE {:ap1 :hasWLAN ?w. ?w :antennaGain ?g.}"))
    assert table.rows == [(Literal("5.0", "decimal"),)]


def test_ranking_query_with_nothing_in_range():
    g = Graph(three_aps())
    table = evaluate(g, ranking_query())
    assert table.columns == ["aps", "cnt"] and table.rows == []


def test_keep_carried_exposes_sort_columns():
    q = ranking_query()
    g = Graph()
    ap, w, bw = T("ap1"), T("w1"), T("bw1")
    g.update([
        Triple(ap, vocab.STATIONS_IN_RANGE, T("sta1")), Triple(ap, vocab.HAS_WLAN, w),
        Triple(w, vocab.ANTENNA_GAIN, Literal("5.0", "decimal")),
        Triple(w, vocab.HAS_TX_POWER, Literal("20.0", "decimal")),
        Triple(bw, vocab.HAS_VALUE, Literal("9.0", "decimal")),
    ])
    for k in range(2):
        a = T(f"asso{k}")
        g.update([Triple(ap, vocab.ASSOCIATED_STATIONS, a), Triple(a, vocab.RDF_TYPE, vocab.ASSOCIATION),
                  Triple(a, vocab.FROM, ap), Triple(a, vocab.TO, T("sta1")),
                  Triple(a, vocab.HAS_BANDWIDTH, bw)])
    table = evaluate(g, q, keep_carried=True)
    assert table.columns[:2] == ["aps", "cnt"]
    assert set(table.columns) >= {"bwValue", "g", "tx"}
    row = table.dicts()[0]
    assert row["cnt"] == num(2) and row["bwValue"] == Literal("9.0", "decimal")


def test_implicit_tie_break_is_ascending_group_key():
    g = Graph([Triple(T(n), T("p"), T("o")) for n in ("c", "a", "b")])
    q = parse_query("SELECT ?s (COUNT(?o) AS ?n) WHERE { ?s :p ?o } GROUP BY ?s ORDER BY ?n")
    assert [r[0] for r in evaluate(g, q).rows] == [T("a"), T("b"), T("c")]


def test_global_count_without_group_by():
    g = Graph([Triple(T(n), T("p"), T("o")) for n in ("c", "a")])
    q = parse_query("SELECT (COUNT(?s) AS ?n) WHERE { ?s :p ?o }")
    assert evaluate(g, q).rows == [(num(2),)]
    assert evaluate(Graph(), q).rows == [(num(0),)]


def test_matches_brute_force_on_fixture():
    g = three_aps()
    q = parse_query("SELECT ?ap ?t WHERE { ?ap ?p ?t } ORDER BY DESC(?ap)")
    cols, rows = brute_evaluate(g, q)
    table = evaluate(Graph(g), q)
    assert table.columns == cols and table.rows == rows
