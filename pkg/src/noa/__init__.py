"""Exact symbolic toolkit for number operator algebras and generalized SUSY."""

from .algebra import Alphabet, Polynomial, adjoint, anticommutator, bracket, commutator, parse_expr
from .presentations import Presentation, catalog, tensor, truncated_q_number
from .rewrite import DegLex, RewriteSystem, check_confluence, complete, normal_words, orient, reduce

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "DegLex",
    "Polynomial",
    "Presentation",
    "RewriteSystem",
    "adjoint",
    "anticommutator",
    "bracket",
    "catalog",
    "check_confluence",
    "commutator",
    "complete",
    "normal_words",
    "orient",
    "parse_expr",
    "reduce",
    "tensor",
    "truncated_q_number",
]
