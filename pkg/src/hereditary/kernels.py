from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from src.errors import InvalidInputError
from src.freepoly import FreePolyMatrix, evaluate as evaluate_delta
from src.gradedfun import GradedFunction, evaluate
from src.linalg import as_complex_matrix, min_hermitian_eigenvalue, operator_norm
from src.ncpoints import MatrixTuple, SampleSet

KernelEvaluator = Callable[[MatrixTuple, MatrixTuple], np.ndarray]


@dataclass(frozen=True)
class HereditaryKernel:
    """Function on same-grading pairs (lam, mu) with (g n) x (g n) values.

    Holomorphic in lam and anti-holomorphic in mu, prototype u(mu)* u(lam).
    """

    evaluator: KernelEvaluator = field(repr=False)
    g: int
    d: int
    descriptor: str = ""

    def __call__(self, lam: MatrixTuple, mu: MatrixTuple) -> np.ndarray:
        if lam.d != self.d or mu.d != self.d:
            raise InvalidInputError(f"kernel in {self.d} variables evaluated at d={lam.d}, d={mu.d}")
        if lam.n != mu.n:
            raise InvalidInputError(f"kernel is defined on same-grading pairs only, got {lam.n} and {mu.n}")
        value = as_complex_matrix(self.evaluator(lam, mu), name="kernel value")
        size = self.g * lam.n
        if value.shape != (size, size):
            raise InvalidInputError(f"kernel value of shape {value.shape}, expected {size}x{size}")
        return value

    @classmethod
    def tabulated(
        cls,
        points: Sequence[MatrixTuple],
        values: Sequence[np.ndarray],
        M: int,
        delta: FreePolyMatrix | None = None,
    ) -> "HereditaryKernel":
        """Kernel of a sampled function: cone P, or the model cone when ``delta`` is given."""
        u = GradedFunction.from_samples(points, values, M, descriptor="tabulated")
        return kernel_from_function(u) if delta is None else model_cone_element(delta, u)


def kernel_from_function(u: GradedFunction) -> HereditaryKernel:
    """A(lam, mu) = u(mu)* u(lam)."""

    def _evaluate(lam: MatrixTuple, mu: MatrixTuple) -> np.ndarray:
        return evaluate(u, mu).conj().T @ evaluate(u, lam)

    return HereditaryKernel(evaluator=_evaluate, g=1, d=u.d, descriptor=f"P[{u.descriptor}]")


def model_cone_element(delta: FreePolyMatrix, u: GradedFunction) -> HereditaryKernel:
    """(id (x) u(mu))* (id - delta(mu)* delta(lam) (x) id_H) (id (x) u(lam)).

    The identity legs are C^L, L the column count of delta, so values are
    (L n) x (L n).
    """
    if delta.d != u.d:
        raise InvalidInputError(f"delta has d={delta.d} but u has d={u.d}")
    L, M = delta.L, u.M

    def _evaluate(lam: MatrixTuple, mu: MatrixTuple) -> np.ndarray:
        n = lam.n
        eye_L = np.eye(L, dtype=np.complex128)
        left = np.kron(eye_L, evaluate(u, lam))
        right = np.kron(eye_L, evaluate(u, mu))
        D = evaluate_delta(delta, mu).conj().T @ evaluate_delta(delta, lam)
        middle = np.eye(L * n * M, dtype=np.complex128) - np.kron(D, np.eye(M, dtype=np.complex128))
        return right.conj().T @ middle @ left

    return HereditaryKernel(evaluator=_evaluate, g=L, d=u.d, descriptor=f"C[{u.descriptor}]")


def mean_kernel(kernels: Sequence[HereditaryKernel], descriptor: str = "mean") -> HereditaryKernel:
    kernels = list(kernels)
    if not kernels:
        raise InvalidInputError("cannot average an empty family of kernels")
    g, d = kernels[0].g, kernels[0].d
    if any(k.g != g or k.d != d for k in kernels):
        raise InvalidInputError("averaged kernels must share g and d")

    def _evaluate(lam: MatrixTuple, mu: MatrixTuple) -> np.ndarray:
        return sum(k(lam, mu) for k in kernels) / len(kernels)

    return HereditaryKernel(evaluator=_evaluate, g=g, d=d, descriptor=descriptor)


def same_grading_pairs(grid: SampleSet | Sequence[MatrixTuple]) -> list[tuple[int, int]]:
    points = list(grid)
    return [(a, b) for a in range(len(points)) for b in range(len(points)) if points[a].n == points[b].n]


def pair_distances(A: HereditaryKernel, B: HereditaryKernel, grid: SampleSet | Sequence[MatrixTuple]) -> list[float]:
    """||A(lam, mu) - B(lam, mu)|| for every ordered same-grading pair of ``grid``."""
    if A.g != B.g or A.d != B.d:
        raise InvalidInputError(f"kernels with (g, d) = ({A.g}, {A.d}) and ({B.g}, {B.d}) are not comparable")
    points = list(grid)
    pairs = same_grading_pairs(points)
    if not pairs:
        raise InvalidInputError("the grid has no same-grading pairs")
    return [operator_norm(A(points[a], points[b]) - B(points[a], points[b])) for a, b in pairs]


def kernel_distance(A: HereditaryKernel, B: HereditaryKernel, grid: SampleSet | Sequence[MatrixTuple]) -> float:
    return max(pair_distances(A, B, grid))


def hermitian_defect(A: HereditaryKernel, grid: SampleSet | Sequence[MatrixTuple]) -> float:
    """max ||A(lam, mu)* - A(mu, lam)|| over same-grading pairs."""
    points = list(grid)
    return max((operator_norm(A(points[a], points[b]).conj().T - A(points[b], points[a])) for a, b in same_grading_pairs(points)), default=0.0)


def positivity_floor(A: HereditaryKernel, points: SampleSet | Sequence[MatrixTuple]) -> float:
    """Smallest eigenvalue of A(lam, lam) over ``points``."""
    return min(min_hermitian_eigenvalue(A(p, p)) for p in points)
