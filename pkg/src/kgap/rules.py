"""Service-specific association rules: ``body => associateTo(?station, technology)``.

Rule files hold one block per rule::

    PREFIX net: <http://purl.org/toco/>

    RULE video_over_lte
    ?u a net:UserEquipment .
    ?u net:hasService ?s .
    ?s net:isVideo true .
    => associateTo(?u, net:LTE)
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .kg import vocab
from .kg.graph import Graph
from .kg.terms import IRI, Variable
from .query.engine import solve_bgp
from .query.parser import DEFAULT_PREFIXES, parse_query

log = logging.getLogger(__name__)


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    name: str
    body: tuple  # triple patterns
    station_var: Variable
    technology: IRI

    def __post_init__(self):
        if not any(self.station_var in pattern for pattern in self.body):
            raise RuleError(f"rule {self.name}: {self.station_var} does not occur in the body")


@dataclass(frozen=True)
class Assignment:
    station: IRI
    technology: IRI
    rule_name: str


_HEAD = re.compile(r"^=>\s*associateTo\(\s*([?$][A-Za-z_]\w*)\s*,\s*(\S+?)\s*\)\s*$")


def parse_rules(text: str, technologies: Optional[Iterable[IRI]] = None) -> list[Rule]:
    """Parse a rule file. ``technologies`` restricts the allowed head technologies."""
    prefix_lines: list[str] = []
    blocks: list[tuple[int, str, list[str], Optional[str]]] = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.upper().startswith("PREFIX"):
            prefix_lines.append(line)
        elif line.startswith("RULE"):
            parts = line.split()
            if len(parts) != 2:
                raise RuleError(f"line {lineno}: expected 'RULE <name>'")
            current = [lineno, parts[1], [], None]
            blocks.append(current)
        elif current is None:
            raise RuleError(f"line {lineno}: pattern outside a RULE block")
        elif line.startswith("=>"):
            if current[3] is not None:
                raise RuleError(f"line {lineno}: rule {current[1]} has two heads")
            current[3] = line
        else:
            if current[3] is not None:
                raise RuleError(f"line {lineno}: pattern after the head of rule {current[1]}")
            current[2].append(line)

    allowed = set(technologies) if technologies is not None else None
    prologue = "\n".join(prefix_lines)
    rules = []
    names = set()
    for lineno, name, body_lines, head in blocks:
        if name in names:
            raise RuleError(f"line {lineno}: duplicate rule name {name}")
        names.add(name)
        if head is None:
            raise RuleError(f"line {lineno}: rule {name} has no '=> associateTo(...)' head")
        if not body_lines:
            raise RuleError(f"line {lineno}: rule {name} has an empty body")
        m = _HEAD.match(head)
        if m is None:
            raise RuleError(f"rule {name}: malformed head {head!r}")
        var_text, tech_text = m.groups()
        # reuse the query parser for both the body and the technology term
        try:
            q = parse_query(
                f"{prologue}\nSELECT {var_text} WHERE {{ {' '.join(body_lines)} {var_text} a {tech_text} . }}"
            )
        except ValueError as e:
            raise RuleError(f"rule {name}: {e}") from None
        tech = q.bgp[-1][2]
        if not isinstance(tech, IRI):
            raise RuleError(f"rule {name}: technology must be an IRI")
        if allowed is not None and tech not in allowed:
            raise RuleError(f"rule {name}: technology {tech} is not declared")
        rules.append(Rule(name, q.bgp[:-1], Variable(var_text[1:]), tech))
    return rules


def _known(rule: Rule, predicates) -> bool:
    for pattern in rule.body:
        p = pattern[1]
        if isinstance(p, IRI) and p not in predicates:
            log.warning("rule %s uses unknown predicate %s; skipped", rule.name, p)
            return False
    return True


def apply_rules(graph: Graph, rules: Iterable[Rule], predicates=vocab.PREDICATES) -> list[Assignment]:
    """Fire rules in declaration order; the first rule to match a station wins."""
    chosen: dict[IRI, Assignment] = {}
    for rule in rules:
        if not _known(rule, predicates):
            continue
        table = solve_bgp(graph, rule.body)
        for station in table.column(rule.station_var):
            if isinstance(station, IRI) and station not in chosen:
                chosen[station] = Assignment(station, rule.technology, rule.name)
    return [chosen[k] for k in sorted(chosen, key=lambda i: i.value)]


def constrain_candidates(candidates: list, assignment: Optional[Assignment], graph: Graph) -> list:
    """Keep only candidates using the assigned technology (order preserved)."""
    if assignment is None:
        return list(candidates)
    return [
        ap for ap in candidates
        if assignment.technology in {t.object for t in graph.match(ap, vocab.USES_TECHNOLOGY, None)}
    ]


def load_rules(path, technologies=None) -> list[Rule]:
    with open(path, encoding="utf-8") as f:
        return parse_rules(f.read(), technologies)


__all__ = [
    "Assignment",
    "DEFAULT_PREFIXES",
    "Rule",
    "RuleError",
    "apply_rules",
    "constrain_candidates",
    "load_rules",
    "parse_rules",
]
