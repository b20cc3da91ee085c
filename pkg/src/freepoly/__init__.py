"""Free polynomials in noncommuting variables: parsing, formatting, evaluation on matrix tuples."""

from .algebra import FreePoly, FreePolyMatrix, Word, all_words, format_matrix, format_poly, word_order_key
from .evaluate import evaluate, evaluate_poly, in_polyhedron, polyhedron_margin
from .parser import parse

__all__ = [
    "FreePoly",
    "FreePolyMatrix",
    "Word",
    "all_words",
    "evaluate",
    "evaluate_poly",
    "format_matrix",
    "format_poly",
    "in_polyhedron",
    "parse",
    "polyhedron_margin",
    "word_order_key",
]
