from __future__ import annotations

from typing import Sequence

import numpy as np

from src.errors import InvalidInputError
from src.linalg import operator_norm


def _distance(a: np.ndarray, b: np.ndarray) -> float:
    return operator_norm(np.atleast_2d(np.asarray(a) - np.asarray(b)))


def _clusters(values: Sequence[np.ndarray], candidates: Sequence[int], radius: float) -> list[list[int]]:
    """Greedy ball cover: the first unassigned index is the next centre."""
    remaining = list(candidates)
    clusters: list[list[int]] = []
    while remaining:
        centre = remaining[0]
        members = [k for k in remaining if _distance(values[centre], values[k]) <= radius]
        clusters.append(members)
        taken = set(members)
        remaining = [k for k in remaining if k not in taken]
    return clusters


def _per_point(eps: float | Sequence[float], m: int) -> list[float]:
    if np.isscalar(eps):
        return [float(eps)] * m
    eps = [float(e) for e in eps]
    if len(eps) != m:
        raise InvalidInputError(f"{len(eps)} tolerances for {m} points")
    return eps


def extract_cauchy_subsequence(vector_lists: Sequence[Sequence[np.ndarray]], eps: float | Sequence[float]) -> list[int]:
    """Finite diagonal argument over the points.

    ``vector_lists[i][k]`` is member k observed at point i. At each point the
    surviving indices are covered by balls of radius eps_i / 2 and the
    largest ball is kept (earliest first index wins ties), so every pair kept
    at point i is within eps_i. Indices are 0-based and increasing.
    """
    if not vector_lists:
        raise InvalidInputError("need values at one point at least")
    K = len(vector_lists[0])
    if K < 1:
        raise InvalidInputError("need at least one sequence member")
    if any(len(vals) != K for vals in vector_lists):
        raise InvalidInputError("every point must carry the same number of members")
    tolerances = _per_point(eps, len(vector_lists))

    selected = list(range(K))
    for values, e in zip(vector_lists, tolerances):
        clusters = _clusters(values, selected, e / 2.0)
        selected = max(clusters, key=lambda c: (len(c), -c[0]))
    return selected


def diameter(values: Sequence[np.ndarray]) -> float:
    best = 0.0
    for a in range(len(values)):
        for b in range(a + 1, len(values)):
            best = max(best, _distance(values[a], values[b]))
    return best


def min_pairwise_distance(values: Sequence[np.ndarray]) -> float:
    if len(values) < 2:
        return 0.0
    return min(_distance(values[a], values[b]) for a in range(len(values)) for b in range(a + 1, len(values)))


def is_converged(subsequence: Sequence[int], K: int) -> bool:
    return len(subsequence) >= min(2, K)
