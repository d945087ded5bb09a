from .graph import Graph, MalformedTripleError, Triple
from .ntriples import NTriplesError, load_ntriples, serialize_ntriples
from .terms import IRI, Literal, TermError, Variable, literal

__all__ = [
    "Graph",
    "IRI",
    "Literal",
    "MalformedTripleError",
    "NTriplesError",
    "TermError",
    "Triple",
    "Variable",
    "literal",
    "load_ntriples",
    "serialize_ntriples",
]
