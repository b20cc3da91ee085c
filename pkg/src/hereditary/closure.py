from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from src.data.models import ComplexMatrixPayload
from src.errors import ConvergenceError, InvalidInputError, PreconditionError
from src.freepoly import FreePolyMatrix, polyhedron_margin
from src.linalg import DEFAULT_RANK_TOL
from src.ncpoints import SampleSet
from src.utils.progress import progress
from src.wandering import SequenceSamples, WanderingEngine, WanderingResult

from .kernels import HereditaryKernel, kernel_distance, mean_kernel, pair_distances


class ClosureMode(str, Enum):
    CONE_P = "cone-P"
    MODEL_CONE = "model-cone"


@dataclass
class ClosureReport:
    mode: ClosureMode
    residual: float
    invariance_residual: float
    pairs_evaluated: int
    limits: list[np.ndarray]
    pair_distances: list[float] = field(default_factory=list)
    margins: list[float] = field(default_factory=list)
    wandering: WanderingResult | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "residual": self.residual,
            "invariance_residual": self.invariance_residual,
            "pairs_evaluated": self.pairs_evaluated,
            "limits": [ComplexMatrixPayload.from_array(L).model_dump() for L in self.limits],
        }

    def pair_rows(self) -> list[dict]:
        return [{"pair_index": j, "distance": dist} for j, dist in enumerate(self.pair_distances)]


def _tail(indices: Sequence[int]) -> list[int]:
    return list(indices[-max(1, math.ceil(len(indices) / 2)) :])


def _kernel(points: SampleSet, values: Sequence[np.ndarray], M: int, mode: ClosureMode, delta: FreePolyMatrix | None) -> HereditaryKernel:
    return HereditaryKernel.tabulated(list(points), list(values), M, delta if mode is ClosureMode.MODEL_CONE else None)


def closure_recover(
    samples: SequenceSamples,
    grid: SampleSet,
    mode: ClosureMode | str = ClosureMode.CONE_P,
    delta: FreePolyMatrix | None = None,
    eps: float | None = None,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> ClosureReport:
    """Recover a function whose kernel is the limit of the kernels of ``samples``.

    Kernels do not see the wandering unitaries, so the kernel of the
    per-point limit of the steered subsequence must match the kernels of the
    raw tail of the sequence.
    """
    mode = ClosureMode(mode)
    if mode is ClosureMode.MODEL_CONE and delta is None:
        raise InvalidInputError("model-cone mode needs a defining polynomial matrix delta")
    sampled = {q.key for q in samples.points}
    if any(p.key not in sampled for p in grid):
        raise InvalidInputError("every grid point must be one of the sample points")

    margins: list[float] = []
    if mode is ClosureMode.MODEL_CONE:
        margins = [polyhedron_margin(delta, p) for p in grid]
        outside = [j for j, margin in enumerate(margins) if margin <= 0.0]
        if outside:
            raise PreconditionError(f"grid points {outside} lie outside the polyhedron (margin <= 0)")

    result = WanderingEngine(eps=eps, rank_tol=rank_tol, step_name="closure").run(samples)
    if not result.converged:
        raise ConvergenceError("no Cauchy subsequence at the requested tolerance", subsequence=result.subsequence, cauchy_residual=result.cauchy_residual)

    progress.update_status("closure", mode.value, "Comparing kernels")
    points = samples.points
    recovered = _kernel(points, result.limits, samples.M, mode, delta)
    tail = mean_kernel([_kernel(points, samples.values[k], samples.M, mode, delta) for k in _tail(result.subsequence)])
    distances = pair_distances(recovered, tail, grid)

    invariance = 0.0
    for k in range(samples.K):
        raw = _kernel(points, samples.values[k], samples.M, mode, delta)
        steered = _kernel(points, result.transformed[k], samples.M, mode, delta)
        invariance = max(invariance, kernel_distance(raw, steered, grid))
    progress.update_status("closure", mode.value, "Done")

    return ClosureReport(
        mode=mode,
        residual=max(distances),
        invariance_residual=invariance,
        pairs_evaluated=len(distances),
        limits=result.limits,
        pair_distances=distances,
        margins=margins,
        wandering=result,
    )
