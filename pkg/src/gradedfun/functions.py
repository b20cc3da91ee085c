from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from src.data.cache import SampleTable
from src.data.models import ComplexMatrixPayload, SampledFunctionPayload, SamplePayload
from src.errors import InvalidInputError, PreconditionError
from src.freepoly import FreePoly, evaluate_poly
from src.linalg import ampliate, as_complex_matrix, unitarity_residual
from src.ncpoints import MatrixTuple, SampleSet

from .layout import check_value_shape, stack_components

UNITARY_TOL = 1e-8

Evaluator = Callable[[MatrixTuple], np.ndarray]


@dataclass(frozen=True)
class GradedFunction:
    """Truncated H-valued graded function: grading-n points map to (n M) x n matrices."""

    d: int
    M: int
    evaluator: Evaluator = field(repr=False)
    descriptor: str = ""
    table: SampleTable = field(default_factory=SampleTable, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.d <= 0 or self.M <= 0:
            raise InvalidInputError("d and M must be positive")

    def __call__(self, lam: MatrixTuple) -> np.ndarray:
        return evaluate(self, lam)

    def tabulate(self, points: SampleSet | Sequence[MatrixTuple]) -> list[np.ndarray]:
        """Evaluate on ``points`` and keep the values in the sample table.

        Plain :func:`evaluate` reads the table but never writes it.
        """
        values = [evaluate(self, p) for p in points]
        self.table.update((p.key, v) for p, v in zip(points, values))
        return values

    @classmethod
    def from_samples(cls, points: Sequence[MatrixTuple], values: Sequence[np.ndarray], M: int, descriptor: str = "sampled") -> "GradedFunction":
        """Function known only on ``points``; evaluating elsewhere is an error."""
        if len(points) != len(values):
            raise InvalidInputError("points and values must have equal length")
        if not points:
            raise InvalidInputError("a sampled function needs at least one sample")
        checked = []
        for p, v in zip(points, values):
            v = as_complex_matrix(v, name="sample value").copy()
            check_value_shape(v, p.n, M)
            v.setflags(write=False)
            checked.append((p.key, v))

        def _missing(lam: MatrixTuple) -> np.ndarray:
            raise InvalidInputError(f"{descriptor}: no sample at the requested grading-{lam.n} point")

        fn = cls(d=points[0].d, M=M, evaluator=_missing, descriptor=descriptor)
        fn.table.update(checked)
        return fn

    def to_payload(self, points: Sequence[MatrixTuple]) -> SampledFunctionPayload:
        return SampledFunctionPayload(
            M=self.M,
            d=self.d,
            samples=[SamplePayload(point=p.to_payload(), value=ComplexMatrixPayload.from_array(evaluate(self, p))) for p in points],
        )

    @classmethod
    def from_payload(cls, payload: SampledFunctionPayload, descriptor: str = "sampled") -> "GradedFunction":
        points = [MatrixTuple.from_payload(s.point) for s in payload.samples]
        if any(p.d != payload.d for p in points):
            raise InvalidInputError(f"payload declares d={payload.d} but a sample point has another d")
        values = [s.value.to_array() for s in payload.samples]
        return cls.from_samples(points, values, payload.M, descriptor)


def evaluate(u: GradedFunction, lam: MatrixTuple) -> np.ndarray:
    if lam.d != u.d:
        raise InvalidInputError(f"function of d={u.d} evaluated at a point with d={lam.d}")
    cached = u.table.get(lam.key)
    if cached is not None:
        return cached
    value = as_complex_matrix(u.evaluator(lam), name="function value")
    check_value_shape(value, lam.n, u.M)
    value.setflags(write=False)
    return value


def from_scalar_polys(qs: Sequence[FreePoly], d: int | None = None) -> GradedFunction:
    """nc function whose m-th H component is qs[m](lam)."""
    qs = list(qs)
    if not qs:
        raise InvalidInputError("need at least one polynomial")
    d = d if d is not None else max(1, max(q.max_letter for q in qs))
    if any(q.max_letter > d for q in qs):
        raise InvalidInputError(f"polynomial letters exceed d={d}")

    def _evaluate(lam: MatrixTuple) -> np.ndarray:
        return stack_components([evaluate_poly(q, lam) for q in qs], lam.n)

    return GradedFunction(d=d, M=len(qs), evaluator=_evaluate, descriptor=f"polys[{len(qs)}]")


def constant_function(vector: Sequence[complex], d: int) -> GradedFunction:
    """lam -> sum_m c_m (I_n as component m); the constant c in H at grading 1."""
    c = np.asarray(vector, dtype=np.complex128).reshape(-1)
    return from_scalar_polys([FreePoly.constant(v) if v != 0 else FreePoly() for v in c], d=d)


def unitary_action(U, u: GradedFunction) -> GradedFunction:
    """U*u: lam -> (id_n (x) U) u(lam)."""
    U = as_complex_matrix(U, name="U")
    if U.shape != (u.M, u.M):
        raise InvalidInputError(f"unitary of shape {U.shape} for truncation {u.M}")
    residual = unitarity_residual(U)
    if residual > UNITARY_TOL:
        raise PreconditionError(f"U is not unitary (||U*U - I|| = {residual:.3e})")

    def _evaluate(lam: MatrixTuple) -> np.ndarray:
        return ampliate(U, lam.n) @ evaluate(u, lam)

    return GradedFunction(d=u.d, M=u.M, evaluator=_evaluate, descriptor=f"U*{u.descriptor}")


def average(functions: Sequence[GradedFunction], descriptor: str = "mean") -> GradedFunction:
    """Pointwise arithmetic mean of functions sharing d and M."""
    functions = list(functions)
    if not functions:
        raise InvalidInputError("cannot average an empty family")
    d, M = functions[0].d, functions[0].M
    if any(f.d != d or f.M != M for f in functions):
        raise InvalidInputError("averaged functions must share d and M")

    def _evaluate(lam: MatrixTuple) -> np.ndarray:
        return sum(evaluate(f, lam) for f in functions) / len(functions)

    return GradedFunction(d=d, M=M, evaluator=_evaluate, descriptor=descriptor)
