"""Seeded generators for points, polynomials, unitaries and test sequences.

Matrix entries are complex with real and imaginary parts uniform in
[-1, 1]; points are then rescaled to the requested norm or polyhedron
margin.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from src.errors import InvalidInputError, PreconditionError
from src.freepoly import FreePoly, FreePolyMatrix, all_words, polyhedron_margin
from src.gradedfun import GradedFunction, evaluate, from_scalar_polys, unitary_action
from src.linalg import condition_number, operator_norm
from src.ncpoints import MatrixTuple, SampleRole, SampleSet
from src.wandering import SequenceSamples

SHIFTING_POINT = 0.5
_MAX_SHRINK_STEPS = 60


def random_matrix(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return rng.uniform(-1.0, 1.0, (rows, cols)) + 1j * rng.uniform(-1.0, 1.0, (rows, cols))


def random_tuple(rng: np.random.Generator, d: int, n: int, norm: float | None = None) -> MatrixTuple:
    """d random n x n matrices; with ``norm`` the largest one is rescaled to that norm."""
    mats = [random_matrix(rng, n) for _ in range(d)]
    if norm is not None:
        top = max(operator_norm(m) for m in mats)
        mats = [m * (norm / top) for m in mats]
    return MatrixTuple(tuple(mats))


def random_points(rng: np.random.Generator, d: int, gradings: Sequence[int], norm: float, role: SampleRole = SampleRole.DENSE_GRID) -> SampleSet:
    return SampleSet.of([random_tuple(rng, d, n, norm) for n in gradings], role)


def random_point_in_polyhedron(rng: np.random.Generator, delta: FreePolyMatrix, n: int, margin: float = 0.1) -> MatrixTuple:
    """Random grading-n point with polyhedron_margin(delta, point) >= margin."""
    lam = random_tuple(rng, delta.d, n, norm=1.0)
    scale = 1.0
    for _ in range(_MAX_SHRINK_STEPS):
        candidate = MatrixTuple(tuple(scale * m for m in lam))
        if polyhedron_margin(delta, candidate) >= margin:
            return candidate
        scale /= 2.0
    raise PreconditionError(f"no point with margin {margin} found; the polyhedron may not contain 0 with that margin")


def random_poly(rng: np.random.Generator, d: int, degree: int, terms: int | None = None) -> FreePoly:
    words = all_words(d, degree)
    count = terms if terms is not None else int(rng.integers(1, min(len(words), 5) + 1))
    picks = rng.choice(len(words), size=min(count, len(words)), replace=False)
    return FreePoly((words[j], complex(rng.uniform(-1, 1), rng.uniform(-1, 1))) for j in sorted(picks))


def random_poly_matrix(rng: np.random.Generator, d: int, J: int, L: int, degree: int) -> FreePolyMatrix:
    return FreePolyMatrix.of([[random_poly(rng, d, degree) for _ in range(L)] for _ in range(J)], d)


def random_nc_function(rng: np.random.Generator, d: int, M: int, degree: int, active: int | None = None) -> GradedFunction:
    """from_scalar_polys with random polynomials in the first ``active`` H slots and zeros after."""
    active = M if active is None else min(active, M)
    polys = [random_poly(rng, d, degree) for _ in range(active)] + [FreePoly() for _ in range(M - active)]
    return from_scalar_polys(polys, d=d)


def random_unitary(rng: np.random.Generator, M: int) -> np.ndarray:
    Q, R = np.linalg.qr(random_matrix(rng, M))
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def random_similarity(rng: np.random.Generator, n: int, max_cond: float = 10.0) -> np.ndarray:
    """Invertible S with cond(S) <= max_cond."""
    S = random_matrix(rng, n)
    if condition_number(S) <= max_cond:
        return S
    # cond(I + tR) <= (1 + t||R||) / (1 - t||R||)
    t = 0.9 * (max_cond - 1.0) / ((max_cond + 1.0) * operator_norm(S))
    return np.eye(n, dtype=np.complex128) + t * S


def cyclic_shift(M: int, k: int = 1) -> np.ndarray:
    """Permutation unitary e_j -> e_{(j + k) mod M}."""
    return np.roll(np.eye(M, dtype=np.complex128), k, axis=0)


def scaled(u: GradedFunction, c: float) -> GradedFunction:
    return GradedFunction(d=u.d, M=u.M, evaluator=lambda lam: c * evaluate(u, lam), descriptor=f"{c:.3g}*{u.descriptor}")


def normalize_on(u: GradedFunction, points: Sequence[MatrixTuple], B: float = 1.0) -> GradedFunction:
    """Rescale ``u`` so its largest value norm on ``points`` is B."""
    top = max(operator_norm(evaluate(u, p)) for p in points)
    return u if top == 0.0 else scaled(u, B / top)


def make_shifting_sequence(K: int, M: int, a: complex = 0.5) -> SequenceSamples:
    """values[k] = a e_k at the single scalar point (0.5).

    Every pair is |a| sqrt(2) apart, so no subsequence of the raw sequence converges.
    """
    if K > M:
        raise InvalidInputError(f"K={K} shifted basis vectors do not fit in truncation M={M}")
    if K < 1:
        raise InvalidInputError("K must be positive")
    point = MatrixTuple.scalars(SHIFTING_POINT)
    values = []
    for k in range(K):
        v = np.zeros((M, 1), dtype=np.complex128)
        v[k, 0] = a
        values.append([v])
    return SequenceSamples.of([point], M, values, abs(a))


def wandered_sequence(
    base: GradedFunction,
    points: SampleSet | Sequence[MatrixTuple],
    K: int,
    unitaries: Sequence[np.ndarray],
    B: float | None = None,
) -> tuple[SequenceSamples, list[GradedFunction]]:
    """u^k = W^k * base; every member has the kernel of ``base``."""
    if len(unitaries) != K:
        raise InvalidInputError(f"{len(unitaries)} unitaries for K={K}")
    base.tabulate(points)
    members = [unitary_action(W, base) for W in unitaries]
    values = [[evaluate(f, p) for p in points] for f in members]
    bound = B if B is not None else max(operator_norm(v) for row in values for v in row)
    return SequenceSamples.of(points, base.M, values, bound), members


def drifting_sequence(base: GradedFunction, points: SampleSet | Sequence[MatrixTuple], K: int) -> tuple[SequenceSamples, list[GradedFunction]]:
    """Shift-by-k of a fixed function: u^k = P^k * base with P the cyclic shift of C^M."""
    return wandered_sequence(base, points, K, [cyclic_shift(base.M, k) for k in range(K)])


def random_bounded_sequence(rng: np.random.Generator, points: SampleSet, K: int, M: int, B: float = 1.0) -> SequenceSamples:
    """Independent random values with norms in [B / 2, B]."""
    values = []
    for _ in range(K):
        row = []
        for p in points:
            v = random_matrix(rng, p.n * M, p.n)
            row.append(v * (B * rng.uniform(0.5, 1.0) / operator_norm(v)))
        values.append(row)
    return SequenceSamples.of(points, M, values, B)
