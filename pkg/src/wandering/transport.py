"""Carry a wandering result from the construction points to whole functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from src.errors import InvalidInputError
from src.gradedfun import GradedFunction, average, unitary_action
from src.linalg import operator_norm
from src.ncpoints import ExhaustionGrid, level_tables, metric_distance, sup_distance

from .types import WanderingResult


def transport_functions(functions: Sequence[GradedFunction], result: WanderingResult) -> list[GradedFunction]:
    """U^{k_l} * u^{k_l} for every selected index k_l."""
    if len(functions) != len(result.unitaries):
        raise InvalidInputError(f"{len(functions)} functions for {len(result.unitaries)} unitaries")
    return [unitary_action(result.unitaries[k], functions[k]) for k in result.subsequence]


def limit_function(functions: Sequence[GradedFunction], result: WanderingResult) -> GradedFunction:
    """Pointwise mean of the transported subsequence."""
    return average(transport_functions(functions, result), descriptor="wandering-limit")


@dataclass
class HoldoutReport:
    """Spread of the transported subsequence on an exhaustion grid."""

    metric_diameter: float
    level_sup_diameters: list[float] = field(default_factory=list)
    members: int = 0

    def to_dict(self) -> dict:
        return {
            "metric_diameter": self.metric_diameter,
            "level_sup_diameters": self.level_sup_diameters,
            "members": self.members,
        }


def holdout_report(functions: Sequence[GradedFunction], result: WanderingResult, grid: ExhaustionGrid) -> HoldoutReport:
    """Metric and per-level sup diameters of the selected transported functions.

    The grid may hold points that never entered the unitary construction.
    """
    transported = transport_functions(functions, result)
    tables = [level_tables(grid, f) for f in transported]
    metric_diam = 0.0
    level_diams = [0.0] * len(grid)
    for a in range(len(tables)):
        for b in range(a + 1, len(tables)):
            metric_diam = max(metric_diam, metric_distance(tables[a], tables[b], grid))
            for lvl in range(len(grid)):
                level_diams[lvl] = max(level_diams[lvl], sup_distance(tables[a][lvl], tables[b][lvl]))
    return HoldoutReport(metric_diameter=metric_diam, level_sup_diameters=level_diams, members=len(transported))


@dataclass
class LimitBoundReport:
    max_norm: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.max_norm <= self.bound * (1.0 + 1e-12) + 1e-12


def limit_bound_check(result: WanderingResult, B: float) -> LimitBoundReport:
    """The per-point limits inherit the uniform bound of the sequence."""
    return LimitBoundReport(max_norm=max((operator_norm(L) for L in result.limits), default=0.0), bound=float(B))
