"""Line-oriented N-Triples subset reader and writer."""
from __future__ import annotations

import re

from .graph import Graph, Triple
from .terms import IRI, Literal, TermError, datatype_from_iri


class NTriplesError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


_IRI = r"<([^<>\"\s]+)>"
_LIT = r'"((?:[^"\\]|\\.)*)"(?:\^\^' + _IRI + r")?"
_LINE = re.compile(
    r"^\s*" + _IRI + r"\s+" + _IRI + r"\s+(?:" + _IRI + r"|" + _LIT + r")\s*\.\s*$"
)
_UNESCAPE = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


def _unescape(s: str) -> str:
    return re.sub(r"\\(.)", lambda m: _UNESCAPE.get(m.group(1), m.group(1)), s)


def load_ntriples(text: str) -> Graph:
    graph = Graph()
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE.match(line)
        if m is None:
            if not stripped.endswith("."):
                raise NTriplesError(lineno, "missing terminal '.'")
            raise NTriplesError(lineno, f"cannot parse {stripped!r}")
        s, p, o_iri, lex, dt = m.groups()
        try:
            if o_iri is not None:
                obj = IRI(o_iri)
            else:
                obj = Literal(_unescape(lex), datatype_from_iri(dt) if dt else "string")
            graph.insert(Triple(IRI(s), IRI(p), obj))
        except TermError as e:
            raise NTriplesError(lineno, str(e)) from None
    return graph


def serialize_ntriples(graph: Graph) -> str:
    ordered = sorted(graph, key=lambda t: (t.subject.value, t.predicate.value, t.object.n3()))
    return "".join(t.n3() + "\n" for t in ordered)
