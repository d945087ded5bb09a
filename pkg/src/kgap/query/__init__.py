from .engine import (
    BindingTable,
    EvaluationError,
    OrderingError,
    evaluate,
    group_aggregate,
    order_results,
    solve_bgp,
)
from .parser import (
    Aggregate,
    OrderKey,
    Query,
    QueryStructureError,
    QuerySyntaxError,
    UnknownPrefixError,
    parse_query,
)

__all__ = [
    "Aggregate",
    "BindingTable",
    "EvaluationError",
    "OrderKey",
    "OrderingError",
    "Query",
    "QueryStructureError",
    "QuerySyntaxError",
    "UnknownPrefixError",
    "evaluate",
    "group_aggregate",
    "order_results",
    "solve_bgp",
]
