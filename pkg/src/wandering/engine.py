from __future__ import annotations

from typing import Sequence

import numpy as np

from src.linalg import DEFAULT_RANK_TOL, unitarity_residual
from src.utils.progress import progress

from .subsequence import diameter, extract_cauchy_subsequence, is_converged, min_pairwise_distance
from .types import SequenceSamples, WanderingResult
from .unitary import block_offsets, build_unitary, containment_violation, transform

# Default per-point Cauchy tolerance, relative to the declared bound B.
DEFAULT_EPS_SCALE = 1e-6


class WanderingEngine:
    """Runs unitary construction and subsequence extraction over a sampled sequence.

    With ``steer=False`` every U^k is the identity, which is the
    finite-dimensional Montel baseline: the raw values must already cluster.
    """

    def __init__(
        self,
        *,
        eps: float | Sequence[float] | None = None,
        rank_tol: float = DEFAULT_RANK_TOL,
        steer: bool = True,
        step_name: str = "wandering",
    ) -> None:
        self._eps = eps
        self._rank_tol = float(rank_tol)
        self._steer = steer
        self._step = step_name

    def _tolerances(self, samples: SequenceSamples) -> list[float]:
        if self._eps is None:
            return [DEFAULT_EPS_SCALE * samples.B] * samples.m
        if np.isscalar(self._eps):
            return [float(self._eps)] * samples.m
        return [float(e) for e in self._eps]

    def _unitaries(self, samples: SequenceSamples) -> list[np.ndarray]:
        if not self._steer:
            return [np.eye(samples.M, dtype=np.complex128) for _ in range(samples.K)]
        unitaries = []
        for k, row in enumerate(samples.values):
            progress.update_status(self._step, f"k={k + 1}/{samples.K}", "Building unitary")
            unitaries.append(build_unitary(row, samples.gradings, samples.M, self._rank_tol))
        return unitaries

    def run(self, samples: SequenceSamples) -> WanderingResult:
        eps = self._tolerances(samples)
        unitaries = self._unitaries(samples)

        transformed = [[transform(U, v) for v in row] for U, row in zip(unitaries, samples.values)]
        offsets = block_offsets(samples.gradings)
        containment = max(containment_violation(t, D) for row in transformed for t, D in zip(row, offsets))

        progress.update_status(self._step, f"m={samples.m}", "Extracting subsequence")
        per_point = [[transformed[k][i] for k in range(samples.K)] for i in range(samples.m)]
        subsequence = extract_cauchy_subsequence(per_point, eps)

        cauchy = 0.0
        limits = []
        for i in range(samples.m):
            selected = [per_point[i][k] for k in subsequence]
            cauchy = max(cauchy, diameter(selected))
            limits.append(sum(selected) / len(selected))

        raw = [samples.at_point(i) for i in range(samples.m)]
        result = WanderingResult(
            unitaries=unitaries,
            subsequence=subsequence,
            limits=limits,
            transformed=transformed,
            cauchy_residual=cauchy,
            containment_residual=containment,
            converged=is_converged(subsequence, samples.K),
            epsilon=eps,
            unitarity_residual=max(unitarity_residual(U) for U in unitaries),
            raw_diameter=max(diameter(vals) for vals in raw),
            raw_min_distance=min(min_pairwise_distance(vals) for vals in raw),
            steered=self._steer,
        )
        progress.update_status(self._step, None, "Done")
        return result


def run(
    samples: SequenceSamples,
    eps: float | Sequence[float] | None = None,
    rank_tol: float = DEFAULT_RANK_TOL,
    *,
    steer: bool = True,
) -> WanderingResult:
    return WanderingEngine(eps=eps, rank_tol=rank_tol, steer=steer).run(samples)
