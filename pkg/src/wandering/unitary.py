"""Wandering unitaries.

For one member u^k of the sequence the unitary U^k is assembled point by
point: the coefficient vectors of u^k(lambda_i) extend the cumulative span of
everything seen at earlier points by an orthonormal increment N_i, and U^k
sends N_i onto the next unused standard coordinates. Block i of H therefore
starts at D_{i-1} and has room for n_i^2 new directions, with
D_i = n_1^2 + ... + n_i^2.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from src.errors import CapacityError, InvalidInputError
from src.linalg import DEFAULT_RANK_TOL, ampliate, as_complex_matrix, complete_to_unitary, operator_norm, orthonormal_increment


def coefficient_vectors(value: np.ndarray) -> list[np.ndarray]:
    """The n^2 vectors x_{r,s} in C^M with u(lambda) e_r = sum_s e_s (x) x_{r,s}.

    x_{r,s} is column r of layout block s; vectors come in (r, s)
    lexicographic order.
    """
    value = as_complex_matrix(value, name="value")
    n = value.shape[1]
    if n == 0 or value.shape[0] % n != 0:
        raise InvalidInputError(f"value of shape {value.shape} is not (n M) x n")
    M = value.shape[0] // n
    return [value[s * M : (s + 1) * M, r].copy() for r in range(n) for s in range(n)]


def reassemble(vectors: Sequence[np.ndarray], n: int) -> np.ndarray:
    if len(vectors) != n * n:
        raise InvalidInputError(f"expected {n * n} coefficient vectors, got {len(vectors)}")
    M = np.asarray(vectors[0]).shape[0]
    out = np.zeros((n * M, n), dtype=np.complex128)
    for idx, x in enumerate(vectors):
        r, s = divmod(idx, n)
        out[s * M : (s + 1) * M, r] = x
    return out


def block_offsets(gradings: Sequence[int]) -> list[int]:
    """Cumulative block ends D_1, ..., D_m."""
    offsets = []
    total = 0
    for n in gradings:
        total += n * n
        offsets.append(total)
    return offsets


def required_truncation(gradings: Sequence[int]) -> int:
    return sum(n * n for n in gradings)


def build_unitary(
    values_k: Sequence[np.ndarray],
    gradings: Sequence[int],
    M: int,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> np.ndarray:
    """Unitary steering the values of one member into the nested blocks H_1 ⊂ H_2 ⊂ ..."""
    if len(values_k) != len(gradings):
        raise InvalidInputError(f"{len(values_k)} values for {len(gradings)} gradings")
    required = required_truncation(gradings)
    if M < required:
        raise CapacityError(f"truncation M={M} is too small: the wandering blocks need M >= {required}", required_M=required, available_M=M)

    span: list[np.ndarray] = []
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    start = 0
    for value, n in zip(values_k, gradings):
        value = as_complex_matrix(value, name="value")
        if value.shape != (n * M, n):
            raise InvalidInputError(f"value of shape {value.shape} does not match grading {n} and truncation {M}")
        increment = orthonormal_increment(span, coefficient_vectors(value), rank_tol)
        for j, q in enumerate(increment):
            target = np.zeros(M, dtype=np.complex128)
            target[start + j] = 1.0
            pairs.append((q, target))
        span.extend(increment)
        start += n * n
    return complete_to_unitary(pairs, M)


def transform(U: np.ndarray, value: np.ndarray) -> np.ndarray:
    """(id_n (x) U) value."""
    return ampliate(U, value.shape[1]) @ value


def containment_violation(transformed: np.ndarray, D: int) -> float:
    """Norm of the part of ``transformed`` outside C^n (x) span{e_0, ..., e_{D-1}}."""
    n = transformed.shape[1]
    M = transformed.shape[0] // n
    if D >= M:
        return 0.0
    outside = transformed.reshape(n, M, n)[:, D:, :].reshape(n * (M - D), n)
    return operator_norm(outside)
