"""Executable quantum logic: finite orthocomplemented lattices with law
checking, and a finite-dimensional quantum probability engine with a small
query language for sequenced questions."""

from .lattice import FiniteLattice, from_order_relation
from .laws import Law, LawReport, classify
from .quantum import DensityOperator, Projector, QuestionFamily
from .queries import compile_query, evaluate, parse_query, probability

__version__ = "0.1.0"

__all__ = [
    "FiniteLattice", "from_order_relation", "Law", "LawReport", "classify",
    "DensityOperator", "Projector", "QuestionFamily",
    "compile_query", "evaluate", "parse_query", "probability",
]
