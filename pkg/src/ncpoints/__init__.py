"""Points of the nc universe, sample sets, exhaustion grids and the function-space metric."""

from .grid import DEFAULT_LEVELS, ExhaustionGrid, level_tables, nested_grid
from .metric import metric_distance, sup_distance
from .points import (
    MAX_SIMILARITY_CONDITION,
    MatrixTuple,
    SampleRole,
    SampleSet,
    conjugate,
    direct_sum,
)

__all__ = [
    "DEFAULT_LEVELS",
    "ExhaustionGrid",
    "MAX_SIMILARITY_CONDITION",
    "MatrixTuple",
    "SampleRole",
    "SampleSet",
    "conjugate",
    "direct_sum",
    "level_tables",
    "metric_distance",
    "nested_grid",
    "sup_distance",
]
