from __future__ import annotations

from typing import Sequence

import numpy as np

from src.errors import InvalidInputError
from src.linalg import operator_norm

from .grid import ExhaustionGrid


def sup_distance(f_level: Sequence[np.ndarray], g_level: Sequence[np.ndarray]) -> float:
    """max over sample points of ||f - g||_op (the sampled sup-norm on one compactum)."""
    if len(f_level) != len(g_level):
        raise InvalidInputError(f"tables of length {len(f_level)} and {len(g_level)} are misaligned")
    best = 0.0
    for a, b in zip(f_level, g_level):
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            raise InvalidInputError(f"value shapes {a.shape} and {b.shape} differ")
        best = max(best, operator_norm(a - b))
    return best


def metric_distance(
    f_values: Sequence[Sequence[np.ndarray]],
    g_values: Sequence[Sequence[np.ndarray]],
    grid: ExhaustionGrid,
) -> float:
    """d(f, g) = sum_k w_k * s_k / (1 + s_k), s_k the sampled sup distance on level k."""
    if len(f_values) != len(grid) or len(g_values) != len(grid):
        raise InvalidInputError("value tables must have one row per grid level")
    total = 0.0
    for level, w, f_row, g_row in zip(grid.levels, grid.weights, f_values, g_values):
        if len(f_row) != len(level) or len(g_row) != len(level):
            raise InvalidInputError("value table row is misaligned with its grid level")
        s = sup_distance(f_row, g_row)
        total += w * s / (1.0 + s)
    return total
