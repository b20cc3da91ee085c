"""Tensor layout for C^n (x) H with H = C^M.

Coordinate (s, m) of C^n (x) C^M lives at row s*M + m (0-based), so the
H index runs fastest. Under this layout id_n (x) U is block-diagonal with n
copies of U, and (C^m (x) H) + (C^n (x) H) is identified with C^(m+n) (x) H
by plain concatenation of rows.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from src.errors import InvalidInputError


def check_value_shape(value: np.ndarray, n: int, M: int) -> None:
    if value.shape != (n * M, n):
        raise InvalidInputError(f"value of shape {value.shape} does not match grading {n} and truncation {M}")


def stack_components(components: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Interleave M n x n matrices Q_m into the (n M) x n value with rows s*M + m = Q_m[s, :]."""
    Q = np.stack([np.asarray(c, dtype=np.complex128).reshape(n, n) for c in components])
    M = Q.shape[0]
    return Q.transpose(1, 0, 2).reshape(n * M, n)


def components(value: np.ndarray, n: int, M: int) -> list[np.ndarray]:
    """Inverse of :func:`stack_components`."""
    check_value_shape(value, n, M)
    Q = value.reshape(n, M, n).transpose(1, 0, 2)
    return [Q[m].copy() for m in range(M)]


def embed_isometrically(value: np.ndarray, n: int, M_from: int, M_to: int) -> np.ndarray:
    """Apply id_n (x) V for the coordinate isometry V: C^M_from -> C^M_to.

    Each C^n block keeps its first ``M_from`` H coordinates and is padded
    with zeros, so operator norms and Gram products are unchanged.
    """
    if M_to < M_from:
        raise InvalidInputError(f"cannot embed truncation {M_from} into smaller truncation {M_to}")
    check_value_shape(value, n, M_from)
    padded = np.zeros((n, M_to, n), dtype=np.complex128)
    padded[:, :M_from, :] = np.asarray(value, dtype=np.complex128).reshape(n, M_from, n)
    return padded.reshape(n * M_to, n)
