from __future__ import annotations

import numpy as np

from src.data.cache import WordProductCache
from src.errors import InvalidInputError
from src.linalg import operator_norm
from src.ncpoints import MatrixTuple

from .algebra import FreePoly, FreePolyMatrix


def _check_arity(d: int, lam: MatrixTuple) -> None:
    if lam.d != d:
        raise InvalidInputError(f"polynomial in {d} variables evaluated on a {lam.d}-tuple")


def _evaluate_poly(p: FreePoly, cache: WordProductCache, n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.complex128)
    for word, coeff in p.terms.items():
        out += coeff * cache.get(word)
    return out


def evaluate_poly(p: FreePoly, lam: MatrixTuple) -> np.ndarray:
    """p(lam) as an n x n matrix; the empty word maps to I_n."""
    if p.max_letter > lam.d:
        raise InvalidInputError(f"polynomial uses x{p.max_letter} but the point has d={lam.d}")
    return _evaluate_poly(p, WordProductCache(lam.matrices, lam.n), lam.n)


def evaluate(p: FreePolyMatrix, lam: MatrixTuple) -> np.ndarray:
    """delta(lam): the (J n) x (L n) matrix whose (j, l) block is entry (j, l) at lam."""
    _check_arity(p.d, lam)
    cache = WordProductCache(lam.matrices, lam.n)
    blocks = [[_evaluate_poly(q, cache, lam.n) for q in row] for row in p.entries]
    return np.block(blocks)


def polyhedron_margin(delta: FreePolyMatrix, lam: MatrixTuple) -> float:
    """1 - ||delta(lam)||; positive exactly on the polynomial polyhedron B_delta."""
    return 1.0 - operator_norm(evaluate(delta, lam))


def in_polyhedron(delta: FreePolyMatrix, lam: MatrixTuple) -> bool:
    return polyhedron_margin(delta, lam) > 0.0
