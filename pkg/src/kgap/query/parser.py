"""Recursive-descent parser for the SELECT/BGP/GROUP BY/ORDER BY query subset.

The accepted grammar is written out in ``docs/query-grammar.md``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Union

from ..kg import vocab
from ..kg.terms import IRI, Literal, TermError, Variable

TriplePattern = tuple  # (Term, Term, Term)

DEFAULT_PREFIXES = {"": vocab.TOCO}


class QuerySyntaxError(ValueError):
    def __init__(self, offset: int, expected, found: str):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        super().__init__(
            f"syntax error at byte {offset}: expected one of "
            f"{', '.join(sorted(self.expected))}; found {found!r}"
        )


class UnknownPrefixError(ValueError):
    def __init__(self, prefix: str, offset: int):
        self.prefix = prefix
        self.offset = offset
        super().__init__(f"unknown prefix {prefix + ':'!r} at byte {offset}")


class QueryStructureError(ValueError):
    pass


@dataclass(frozen=True)
class Aggregate:
    var: Variable
    alias: Variable
    func: str = "COUNT"


@dataclass(frozen=True)
class OrderKey:
    var: Variable
    descending: bool = False


@dataclass(frozen=True)
class Query:
    prefixes: dict = field(default_factory=dict)
    projection: tuple = ()
    bgp: tuple = ()
    group_by: tuple = ()
    order_by: tuple = ()

    @property
    def aggregates(self) -> tuple:
        return tuple(p for p in self.projection if isinstance(p, Aggregate))

    @property
    def variables(self) -> list[Variable]:
        seen: dict[Variable, None] = {}
        for pattern in self.bgp:
            for term in pattern:
                if isinstance(term, Variable):
                    seen[term] = None
        return list(seen)

    def substitute(self, mapping) -> "Query":
        """Replace constant terms in the pattern, e.g. to re-target a station IRI."""
        bgp = tuple(tuple(mapping.get(t, t) for t in pat) for pat in self.bgp)
        return replace(self, bgp=bgp)


class _Tok(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iri><[^<>"\s{}|^`\\]*>)
  | (?P<var>[?$][A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<dtmark>\^\^)
  | (?P<number>[+-]?(?:\d+\.\d+|\.\d+|\d+))
  | (?P<pname>(?:[A-Za-z][A-Za-z0-9_\-]*)?:(?:[A-Za-z0-9_](?:[A-Za-z0-9_\-.]*[A-Za-z0-9_\-])?)?)
  | (?P<word>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[{}().;,*])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"PREFIX", "SELECT", "WHERE", "GROUP", "BY", "ORDER", "ASC", "DESC", "COUNT", "AS"}


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QuerySyntaxError(_byte(text, pos), {"token"}, text[pos:pos + 10])
        kind = m.lastgroup
        if kind != "ws":
            tok_text = m.group()
            if kind == "word" and tok_text.upper() in _KEYWORDS:
                kind, tok_text = "kw", tok_text.upper()
            toks.append(_Tok(kind, tok_text, pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


def _byte(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


_UNESCAPE = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


class _Parser:
    def __init__(self, text: str, default_prefixes: dict):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.prefixes: dict[str, str] = {}
        self.defaults = dict(default_prefixes)

    # token helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, *expected):
        t = self.tok
        raise QuerySyntaxError(_byte(self.text, t.pos), expected, t.text or "<end>")

    def is_kw(self, word: str) -> bool:
        return self.tok.kind == "kw" and self.tok.text == word

    def is_punct(self, ch: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == ch

    def expect_kw(self, word: str):
        if not self.is_kw(word):
            self.fail(word)
        self.i += 1

    def expect_punct(self, ch: str):
        if not self.is_punct(ch):
            self.fail(repr(ch))
        self.i += 1

    def variable(self) -> Variable:
        if self.tok.kind != "var":
            self.fail("variable")
        v = Variable(self.tok.text[1:])
        self.i += 1
        return v

    # grammar
    def query(self) -> Query:
        while self.is_kw("PREFIX"):
            self.i += 1
            if self.tok.kind != "pname" or not self.tok.text.endswith(":"):
                self.fail("prefix name")
            name = self.tok.text[:-1]
            self.i += 1
            if self.tok.kind != "iri":
                self.fail("IRI")
            self.prefixes[name] = self.tok.text[1:-1]
            self.i += 1
        self.expect_kw("SELECT")
        projection = []
        while True:
            if self.tok.kind == "var":
                projection.append(self.variable())
            elif self.is_punct("("):
                projection.append(self.aggregate())
            else:
                break
        if not projection:
            self.fail("variable", "'('")
        if self.is_kw("WHERE"):
            self.i += 1
        self.expect_punct("{")
        bgp = self.triples_block()
        self.expect_punct("}")
        group_by = []
        if self.is_kw("GROUP"):
            self.i += 1
            self.expect_kw("BY")
            group_by.append(self.variable())
            while self.tok.kind == "var":
                group_by.append(self.variable())
        order_by = []
        if self.is_kw("ORDER"):
            self.i += 1
            self.expect_kw("BY")
            order_by.append(self.order_key())
            while self.tok.kind == "var" or self.is_kw("ASC") or self.is_kw("DESC"):
                order_by.append(self.order_key())
        if self.tok.kind != "eof":
            self.fail("GROUP", "ORDER", "<end>")
        prefixes = {**self.defaults, **self.prefixes}
        return Query(prefixes, tuple(projection), tuple(bgp), tuple(group_by), tuple(order_by))

    def aggregate(self) -> Aggregate:
        self.expect_punct("(")
        self.expect_kw("COUNT")
        self.expect_punct("(")
        var = self.variable()
        self.expect_punct(")")
        self.expect_kw("AS")
        alias = self.variable()
        self.expect_punct(")")
        return Aggregate(var, alias)

    def order_key(self) -> OrderKey:
        if self.tok.kind == "var":
            return OrderKey(self.variable())
        descending = self.is_kw("DESC")
        if not descending and not self.is_kw("ASC"):
            self.fail("variable", "ASC", "DESC")
        self.i += 1
        self.expect_punct("(")
        var = self.variable()
        self.expect_punct(")")
        return OrderKey(var, descending)

    def triples_block(self) -> list:
        patterns: list = []
        while not self.is_punct("}"):
            subject = self.term(position="subject")
            self.property_list(subject, patterns)
            if self.is_punct("."):
                self.i += 1
            elif not self.is_punct("}"):
                self.fail("'.'", "'}'")
        return patterns

    def property_list(self, subject, patterns: list):
        while True:
            verb = self.verb()
            patterns.append((subject, verb, self.term(position="object")))
            while self.is_punct(","):
                self.i += 1
                patterns.append((subject, verb, self.term(position="object")))
            if not self.is_punct(";"):
                return
            while self.is_punct(";"):
                self.i += 1
            if self.is_punct(".") or self.is_punct("}"):
                return

    def verb(self):
        if self.tok.kind == "word" and self.tok.text == "a":
            self.i += 1
            return vocab.RDF_TYPE
        if self.tok.kind in ("var", "iri", "pname"):
            return self.term(position="predicate")
        self.fail("predicate")

    def term(self, position: str):
        tok = self.tok
        kind = tok.kind
        if kind == "var":
            return self.variable()
        if kind == "iri":
            self.i += 1
            return self._iri(tok.text[1:-1], tok)
        if kind == "pname":
            self.i += 1
            return self._expand(tok)
        if position == "object":
            if kind == "string":
                self.i += 1
                lex = re.sub(r"\\(.)", lambda m: _UNESCAPE.get(m.group(1), m.group(1)),
                             tok.text[1:-1])
                datatype = "string"
                if self.tok.kind == "dtmark":
                    self.i += 1
                    dt_tok = self.tok
                    if dt_tok.kind == "iri":
                        dt_iri = dt_tok.text[1:-1]
                    elif dt_tok.kind == "pname":
                        dt_iri = self._expand(dt_tok).value
                    else:
                        self.fail("datatype IRI")
                    self.i += 1
                    datatype = self._datatype(dt_iri, dt_tok)
                return self._literal(lex, datatype, tok)
            if kind == "number":
                self.i += 1
                dt = "decimal" if "." in tok.text else "integer"
                return self._literal(tok.text, dt, tok)
            if kind == "word" and tok.text in ("true", "false"):
                self.i += 1
                return Literal(tok.text, "boolean")
            self.fail("variable", "IRI", "prefixed name", "literal")
        self.fail("variable", "IRI", "prefixed name")

    def _expand(self, tok: _Tok) -> IRI:
        prefix, _, local = tok.text.partition(":")
        if prefix in self.prefixes:
            base = self.prefixes[prefix]
        elif prefix in self.defaults:
            base = self.defaults[prefix]
        else:
            raise UnknownPrefixError(prefix, _byte(self.text, tok.pos))
        return self._iri(base + local, tok)

    def _iri(self, value: str, tok: _Tok) -> IRI:
        try:
            return IRI(value)
        except TermError:
            raise QuerySyntaxError(_byte(self.text, tok.pos), {"IRI"}, tok.text) from None

    def _datatype(self, iri: str, tok: _Tok) -> str:
        from ..kg.terms import datatype_from_iri

        try:
            return datatype_from_iri(iri)
        except TermError:
            raise QuerySyntaxError(_byte(self.text, tok.pos), {"supported datatype"}, iri) from None

    def _literal(self, lex: str, datatype: str, tok: _Tok) -> Literal:
        try:
            return Literal(lex, datatype)
        except TermError:
            raise QuerySyntaxError(_byte(self.text, tok.pos), {datatype}, tok.text) from None


def _validate(q: Query):
    if not q.bgp:
        raise QueryStructureError("empty graph pattern")
    bgp_vars = set(q.variables)
    aggs = q.aggregates
    for agg in aggs:
        if agg.var not in bgp_vars:
            raise QueryStructureError(f"aggregate over unbound variable {agg.var}")
    for p in q.projection:
        if isinstance(p, Variable) and p not in bgp_vars:
            raise QueryStructureError(f"projected variable {p} not in pattern")
    for v in q.group_by:
        if v not in bgp_vars:
            raise QueryStructureError(f"GROUP BY variable {v} not in pattern")
    if aggs or q.group_by:
        for p in q.projection:
            if isinstance(p, Variable) and p not in q.group_by:
                raise QueryStructureError(f"projected variable {p} is not grouped")
    visible = bgp_vars | {a.alias for a in aggs}
    for key in q.order_by:
        if key.var not in visible:
            raise QueryStructureError(f"ORDER BY variable {key.var} is not bound")


def parse_query(text: str, default_prefixes: dict | None = None) -> Query:
    """Parse query text.

    ``default_prefixes`` are consulted for prefixes the text does not declare;
    by default the empty prefix ``:`` maps to the ToCo namespace.
    """
    if default_prefixes is None:
        default_prefixes = DEFAULT_PREFIXES
    q = _Parser(text, default_prefixes).query()
    _validate(q)
    return q
