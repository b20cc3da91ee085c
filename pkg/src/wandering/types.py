from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, TypedDict

import numpy as np

from src.data.models import ComplexMatrixPayload, SequenceSamplesPayload
from src.errors import InvalidInputError
from src.gradedfun import check_value_shape, embed_isometrically
from src.linalg import as_complex_matrix, operator_norm
from src.ncpoints import MatrixTuple, SampleRole, SampleSet

# Relative slack on the declared bound B, absorbing round-off in generated data.
BOUND_SLACK = 1e-12


class TraceRow(TypedDict):
    point_index: int
    k: int
    residual_to_limit: float


class Residuals(TypedDict):
    cauchy: float
    containment: float
    unitarity: float
    raw_diameter: float
    raw_min_distance: float


@dataclass(frozen=True)
class SequenceSamples:
    """K functions sampled at the same m points: values[k][i] is u^k(points[i])."""

    points: SampleSet
    M: int
    values: tuple[tuple[np.ndarray, ...], ...]
    B: float

    def __post_init__(self) -> None:
        points = self.points if isinstance(self.points, SampleSet) else SampleSet.of(self.points)
        object.__setattr__(self, "points", points)
        if len(points) == 0:
            raise InvalidInputError("sequence samples need at least one point")
        if self.M <= 0:
            raise InvalidInputError("truncation M must be positive")
        if not self.values:
            raise InvalidInputError("sequence samples need at least one function (K >= 1)")
        if self.B < 0:
            raise InvalidInputError("bound B must be nonnegative")

        rows = []
        limit = self.B * (1.0 + BOUND_SLACK) + BOUND_SLACK
        for k, row in enumerate(self.values):
            if len(row) != len(points):
                raise InvalidInputError(f"function {k} has {len(row)} values for {len(points)} points")
            frozen = []
            for i, (value, p) in enumerate(zip(row, points)):
                v = as_complex_matrix(value, name=f"values[{k}][{i}]").copy()
                check_value_shape(v, p.n, self.M)
                norm = operator_norm(v)
                if norm > limit:
                    raise InvalidInputError(f"||values[{k}][{i}]|| = {norm:.6g} exceeds the declared bound B = {self.B:.6g}")
                v.setflags(write=False)
                frozen.append(v)
            rows.append(tuple(frozen))
        object.__setattr__(self, "values", tuple(rows))

    @property
    def K(self) -> int:
        return len(self.values)

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def gradings(self) -> list[int]:
        return self.points.gradings

    def at_point(self, i: int) -> list[np.ndarray]:
        """The K values observed at point ``i``."""
        return [row[i] for row in self.values]

    @classmethod
    def of(cls, points: SampleSet | Sequence[MatrixTuple], M: int, values: Sequence[Sequence[np.ndarray]], B: float) -> "SequenceSamples":
        return cls(points if isinstance(points, SampleSet) else SampleSet.of(points), M, tuple(tuple(r) for r in values), float(B))

    @classmethod
    def from_ragged(
        cls,
        points: SampleSet | Sequence[MatrixTuple],
        values: Sequence[Sequence[np.ndarray]],
        truncations: Sequence[int],
        B: float,
        M: int | None = None,
    ) -> "SequenceSamples":
        """Members living in their own C^{M_k} are embedded into a common C^M."""
        points = points if isinstance(points, SampleSet) else SampleSet.of(points)
        if len(truncations) != len(values):
            raise InvalidInputError("one truncation per sequence member is required")
        target = M if M is not None else max(truncations)
        rows = [
            [embed_isometrically(np.asarray(v), p.n, M_k, target) for v, p in zip(row, points)]
            for row, M_k in zip(values, truncations)
        ]
        return cls.of(points, target, rows, B)

    def to_payload(self) -> SequenceSamplesPayload:
        return SequenceSamplesPayload(
            M=self.M,
            d=self.points.d,
            K=self.K,
            B=self.B,
            points=self.points.to_payload(),
            values=[[ComplexMatrixPayload.from_array(v) for v in row] for row in self.values],
        )

    @classmethod
    def from_payload(cls, payload: SequenceSamplesPayload) -> "SequenceSamples":
        points = SampleSet.from_payload(payload.points, SampleRole.DENSE_GRID)
        if points.d != payload.d:
            raise InvalidInputError(f"payload declares d={payload.d} but its points have d={points.d}")
        return cls.of(points, payload.M, [[v.to_array() for v in row] for row in payload.values], payload.B)


@dataclass
class WanderingResult:
    """Output of one wandering run.

    ``converged`` certifies only the K sampled members: the selected
    transformed values agree within epsilon at every point.
    """

    unitaries: list[np.ndarray]
    subsequence: list[int]
    limits: list[np.ndarray]
    transformed: list[list[np.ndarray]]
    cauchy_residual: float
    containment_residual: float
    converged: bool
    epsilon: list[float] = field(default_factory=list)
    unitarity_residual: float = 0.0
    raw_diameter: float = 0.0
    raw_min_distance: float = 0.0
    steered: bool = True

    def residuals(self) -> Residuals:
        return {
            "cauchy": self.cauchy_residual,
            "containment": self.containment_residual,
            "unitarity": self.unitarity_residual,
            "raw_diameter": self.raw_diameter,
            "raw_min_distance": self.raw_min_distance,
        }
