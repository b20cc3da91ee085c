from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from src.errors import InvalidInputError

from .points import MatrixTuple, SampleRole, SampleSet

DEFAULT_LEVELS = 4


@dataclass(frozen=True)
class ExhaustionGrid:
    """Finite truncation of a compact exhaustion K_1 ⊂ K_2 ⊂ ... sampled on points.

    Level k+1 contains every point of level k. The metric built on top of the
    grid only sees the first ``len(levels)`` compacta, so it is a pseudometric
    on functions that differ only outside the sampled levels.
    """

    levels: tuple[SampleSet, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        levels = tuple(self.levels)
        weights = tuple(float(w) for w in self.weights)
        if not levels:
            raise InvalidInputError("an exhaustion grid needs at least one level")
        if len(weights) != len(levels):
            raise InvalidInputError(f"{len(weights)} weights for {len(levels)} levels")
        if any(w < 0 for w in weights) or sum(weights) > 1.0 + 1e-15:
            raise InvalidInputError("weights must be nonnegative and sum to at most 1")
        for k in range(len(levels) - 1):
            inner = {p.key for p in levels[k]}
            outer = {p.key for p in levels[k + 1]}
            if not inner <= outer:
                raise InvalidInputError(f"level {k + 1} is not contained in level {k + 2}")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_levels(cls, levels: Sequence[SampleSet], weights: Sequence[float] | None = None) -> "ExhaustionGrid":
        if weights is None:
            weights = [2.0 ** -(k + 1) for k in range(len(levels))]
        return cls(tuple(levels), tuple(weights))

    @classmethod
    def from_prefixes(cls, points: Sequence[MatrixTuple], sizes: Sequence[int], weights: Sequence[float] | None = None) -> "ExhaustionGrid":
        """Levels are the prefixes points[:sizes[k]] of one ordered list."""
        if list(sizes) != sorted(sizes) or (sizes and sizes[-1] > len(points)):
            raise InvalidInputError("prefix sizes must be nondecreasing and within the point list")
        levels = [SampleSet.of(points[:s], SampleRole.EXHAUSTION_LEVEL) for s in sizes]
        return cls.from_levels(levels, weights)

    def __len__(self) -> int:
        return len(self.levels)


def nested_grid(
    sampler: Callable[[float], MatrixTuple],
    *,
    radii: Sequence[float],
    per_level: int,
    weights: Sequence[float] | None = None,
) -> ExhaustionGrid:
    """Grow a nested grid: level k adds ``per_level`` points drawn by ``sampler(radii[k])``."""
    if list(radii) != sorted(radii):
        raise InvalidInputError("radii must be nondecreasing")
    points: list[MatrixTuple] = []
    sizes: list[int] = []
    for r in radii:
        points.extend(sampler(float(r)) for _ in range(per_level))
        sizes.append(len(points))
    return ExhaustionGrid.from_prefixes(points, sizes, weights)


def level_tables(grid: ExhaustionGrid, evaluate: Callable[[MatrixTuple], np.ndarray]) -> list[list[np.ndarray]]:
    """Value tables aligned with the grid, one list per level."""
    memo: dict = {}
    tables = []
    for level in grid.levels:
        row = []
        for p in level:
            if p.key not in memo:
                memo[p.key] = evaluate(p)
            row.append(memo[p.key])
        tables.append(row)
    return tables
