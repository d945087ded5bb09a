"""RDF-style terms: IRIs, typed literals and query variables."""
from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Union

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_STRING = XSD + "string"
XSD_BOOLEAN = XSD + "boolean"

DATATYPES = {
    "integer": XSD_INTEGER,
    "decimal": XSD_DECIMAL,
    "string": XSD_STRING,
    "boolean": XSD_BOOLEAN,
}
_SHORT = {v: k for k, v in DATATYPES.items()}
_WHITESPACE = re.compile(r"\s")


class TermError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class IRI:
    value: str

    def __post_init__(self):
        if not self.value or _WHITESPACE.search(self.value):
            raise TermError(f"invalid IRI {self.value!r}")

    def __hash__(self):
        return hash(self.value)

    def n3(self) -> str:
        return f"<{self.value}>"

    def __str__(self):
        return self.value


@dataclass(frozen=True, slots=True)
class Literal:
    """A typed literal. ``datatype`` is one of the short names in ``DATATYPES``."""

    lexical: str
    datatype: str = "string"

    def __post_init__(self):
        if self.datatype not in DATATYPES:
            raise TermError(f"unsupported datatype {self.datatype!r}")
        # fail early on lexical forms that do not parse to the datatype
        self.value

    @property
    def value(self):
        lex = self.lexical
        try:
            if self.datatype == "integer":
                return int(lex)
            if self.datatype == "decimal":
                d = Decimal(lex)
                if not d.is_finite():
                    raise InvalidOperation
                return d
        except (ValueError, InvalidOperation):
            raise TermError(f"{lex!r} is not a valid {self.datatype}") from None
        if self.datatype == "boolean":
            if lex not in ("true", "false"):
                raise TermError(f"{lex!r} is not a valid boolean")
            return lex == "true"
        return lex

    @property
    def is_numeric(self) -> bool:
        return self.datatype in ("integer", "decimal")

    def n3(self) -> str:
        escaped = self.lexical.replace("\\", "\\\\").replace('"', '\\"')
        escaped = escaped.replace("\n", "\\n").replace("\r", "\\r")
        return f'"{escaped}"^^<{DATATYPES[self.datatype]}>'

    def __str__(self):
        return self.lexical


@dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def n3(self) -> str:
        return "?" + self.name

    def __str__(self):
        return "?" + self.name


Term = Union[IRI, Literal, Variable]


def literal(value) -> Literal:
    """Build a literal from a Python value, picking the datatype from its type."""
    if isinstance(value, bool):
        return Literal("true" if value else "false", "boolean")
    if isinstance(value, int):
        return Literal(str(value), "integer")
    if isinstance(value, float):
        return Literal(repr(value), "decimal")
    if isinstance(value, Decimal):
        return Literal(str(value), "decimal")
    return Literal(str(value), "string")


def datatype_from_iri(iri: str) -> str:
    try:
        return _SHORT[iri]
    except KeyError:
        raise TermError(f"unsupported datatype <{iri}>") from None


def sort_key(term) -> tuple:
    """Total order over terms; used for canonical output and final tie-breaks."""
    if term is None:
        return (0,)
    if isinstance(term, IRI):
        return (1, term.value)
    if isinstance(term, Literal):
        if term.is_numeric:
            return (2, term.value, term.lexical)
        if term.datatype == "boolean":
            return (3, term.value)
        return (4, term.lexical)
    return (5, term.name)
