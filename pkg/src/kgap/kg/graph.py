"""In-memory triple store with subject/predicate/object indexes."""
from __future__ import annotations

import threading
from typing import Iterable, Iterator, NamedTuple, Optional

from .terms import IRI, Literal, Variable


class MalformedTripleError(ValueError):
    pass


class Triple(NamedTuple):
    subject: IRI
    predicate: IRI
    object: IRI | Literal

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."


def _check(t) -> Triple:
    if not isinstance(t, Triple):
        t = Triple(*t)
    s, p, o = t
    if type(s) is IRI and type(p) is IRI and isinstance(o, (IRI, Literal)):
        return t
    if any(isinstance(x, Variable) for x in t):
        raise MalformedTripleError(f"variable in stored triple: {t}")
    if not isinstance(s, IRI) or not isinstance(p, IRI):
        raise MalformedTripleError(f"subject and predicate must be IRIs: {t}")
    raise MalformedTripleError(f"object must be an IRI or literal: {t}")


class Graph:
    """A set of triples indexed three ways.

    Index values are insertion-ordered dicts used as ordered sets, so
    :meth:`match` is deterministic for a given build sequence.
    Reads may run concurrently; writers take an exclusive lock.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: dict[Triple, None] = {}
        self._by_s: dict[IRI, dict[Triple, None]] = {}
        self._by_p: dict[IRI, dict[Triple, None]] = {}
        self._by_o: dict[object, dict[Triple, None]] = {}
        self._lock = threading.Lock()
        for t in triples:
            self.insert(t)

    def insert(self, t) -> "Graph":
        t = _check(t)
        with self._lock:
            if t in self._triples:
                return self
            self._triples[t] = None
            self._by_s.setdefault(t.subject, {})[t] = None
            self._by_p.setdefault(t.predicate, {})[t] = None
            self._by_o.setdefault(t.object, {})[t] = None
        return self

    add = insert

    def update(self, triples: Iterable[Triple]) -> "Graph":
        for t in triples:
            self.insert(t)
        return self

    def match(self, s=None, p=None, o=None) -> list[Triple]:
        """Triples unifying with the pattern; ``None`` (or a Variable) is a wildcard."""
        s = None if isinstance(s, Variable) else s
        p = None if isinstance(p, Variable) else p
        o = None if isinstance(o, Variable) else o
        candidates = None
        for term, index in ((s, self._by_s), (p, self._by_p), (o, self._by_o)):
            if term is None:
                continue
            bucket = index.get(term)
            if bucket is None:
                return []
            if candidates is None or len(bucket) < len(candidates):
                candidates = bucket
        if candidates is None:
            return list(self._triples)
        return [
            t for t in candidates
            if (s is None or t.subject == s)
            and (p is None or t.predicate == p)
            and (o is None or t.object == o)
        ]

    def count(self, s=None, p=None, o=None) -> int:
        return len(self.match(s, p, o))

    def value(self, s=None, p=None, o=None) -> Optional[object]:
        """The missing term of the first triple matching a pattern with one wildcard."""
        for t in self.match(s, p, o):
            if s is None:
                return t.subject
            if p is None:
                return t.predicate
            return t.object
        return None

    def subjects(self) -> list[IRI]:
        return list(self._by_s)

    def predicates(self) -> list[IRI]:
        return list(self._by_p)

    def __contains__(self, t) -> bool:
        return tuple(t) in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(list(self._triples))

    def __len__(self) -> int:
        return len(self._triples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples.keys() == other._triples.keys()

    def __repr__(self):
        return f"<Graph with {len(self)} triples>"

    def check_indexes(self) -> bool:
        """True when every index agrees with the triple set."""
        for index, pos in ((self._by_s, 0), (self._by_p, 1), (self._by_o, 2)):
            seen = 0
            for key, bucket in index.items():
                for t in bucket:
                    if t[pos] != key or t not in self._triples:
                        return False
                seen += len(bucket)
            if seen != len(self._triples):
                return False
        return True
