from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

from src.errors import InvalidInputError, PreconditionError

DEFAULT_RANK_TOL = 1e-10

# Standard-basis candidates are admitted during basis extension only when their
# residual after projection keeps this fraction of their length.
_EXTENSION_TOL = 1e-8


def as_complex_matrix(A, *, name: str = "matrix") -> np.ndarray:
    """Coerce ``A`` to a finite 2-D complex128 array."""
    arr = np.asarray(A, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise InvalidInputError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


def as_vector(v, *, name: str = "vector") -> np.ndarray:
    arr = np.asarray(v, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


def operator_norm(A) -> float:
    """Largest singular value of ``A``."""
    arr = as_complex_matrix(A)
    if arr.size == 0:
        return 0.0
    return float(np.linalg.svd(arr, compute_uv=False)[0])


def gram_residual(vectors: Sequence[np.ndarray]) -> float:
    """Max-entry deviation of the Gram matrix of ``vectors`` from the identity."""
    if len(vectors) == 0:
        return 0.0
    V = np.column_stack(vectors)
    G = V.conj().T @ V
    return float(np.max(np.abs(G - np.eye(G.shape[0]))))


def _check_lengths(vectors: Sequence[np.ndarray], length: int | None) -> int | None:
    for v in vectors:
        if length is None:
            length = v.shape[0]
        elif v.shape[0] != length:
            raise InvalidInputError(f"vector length mismatch: {v.shape[0]} != {length}")
    return length


def _project_out(v: np.ndarray, basis: Sequence[np.ndarray]) -> np.ndarray:
    # two passes of modified Gram-Schmidt keep orthogonality at round-off level
    for _ in range(2):
        for q in basis:
            v = v - np.vdot(q, v) * q
    return v


def _increment(existing: Sequence[np.ndarray], candidates: Sequence[np.ndarray], threshold: float) -> list[np.ndarray]:
    basis = list(existing)
    added: list[np.ndarray] = []
    for c in candidates:
        r = _project_out(c, basis)
        norm = float(np.linalg.norm(r))
        if norm <= threshold:
            continue
        q = r / norm
        basis.append(q)
        added.append(q)
    return added


def orthonormal_increment(
    existing: Sequence,
    candidates: Sequence,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> list[np.ndarray]:
    """Orthonormal basis of span(existing + candidates) minus span(existing).

    Candidates are processed in order; a candidate is dropped when its residual
    after projection is at most ``rank_tol`` times the largest candidate norm.
    """
    existing_v = [as_vector(v, name="existing vector") for v in existing]
    candidate_v = [as_vector(v, name="candidate vector") for v in candidates]
    _check_lengths(candidate_v, _check_lengths(existing_v, None))
    if existing_v and gram_residual(existing_v) > max(rank_tol, DEFAULT_RANK_TOL) * 10:
        raise PreconditionError("existing vectors are not orthonormal")
    if not candidate_v:
        return []
    scale = max(float(np.linalg.norm(c)) for c in candidate_v)
    if scale == 0.0:
        return []
    return _increment(existing_v, candidate_v, rank_tol * scale)


def extend_to_basis(vectors: Sequence[np.ndarray], dim: int) -> np.ndarray:
    """Columns: ``vectors`` followed by standard basis vectors tried in index order."""
    added = _increment(list(vectors), list(np.eye(dim, dtype=np.complex128)), _EXTENSION_TOL)
    basis = list(vectors) + added
    if len(basis) != dim:
        raise PreconditionError(f"basis extension produced {len(basis)} vectors, expected {dim}")
    return np.column_stack(basis)


def complete_to_unitary(
    pairs: Sequence[Tuple[Sequence, Sequence]],
    dim: int,
    tol: float = DEFAULT_RANK_TOL,
) -> np.ndarray:
    """Build a ``dim`` x ``dim`` unitary sending each source vector to its target.

    Both orthonormal families are extended to full bases of C^dim and the
    two basis changes are composed.
    """
    if dim <= 0:
        raise InvalidInputError("dim must be positive")
    if len(pairs) > dim:
        raise InvalidInputError(f"{len(pairs)} constraints exceed dimension {dim}")
    if not pairs:
        return np.eye(dim, dtype=np.complex128)

    sources = [as_vector(s, name="source") for s, _ in pairs]
    targets = [as_vector(t, name="target") for _, t in pairs]
    for v in sources + targets:
        if v.shape[0] != dim:
            raise InvalidInputError(f"vector length {v.shape[0]} does not match dim {dim}")
    if gram_residual(sources) > tol:
        raise PreconditionError("source vectors are not orthonormal")
    if gram_residual(targets) > tol:
        raise PreconditionError("target vectors are not orthonormal")

    S = extend_to_basis(sources, dim)
    T = extend_to_basis(targets, dim)
    return T @ S.conj().T


def unitarity_residual(U) -> float:
    U = as_complex_matrix(U, name="U")
    return operator_norm(U.conj().T @ U - np.eye(U.shape[1]))


def block_diag(*blocks) -> np.ndarray:
    """Block-diagonal matrix from 2-D complex blocks."""
    mats = [as_complex_matrix(b, name="block") for b in blocks]
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def ampliate(U, n: int) -> np.ndarray:
    """id_n (x) U under the H-fastest layout: n diagonal copies of U."""
    return np.kron(np.eye(n, dtype=np.complex128), as_complex_matrix(U, name="U"))


def condition_number(S) -> float:
    S = as_complex_matrix(S, name="S")
    s = np.linalg.svd(S, compute_uv=False)
    if s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


def min_hermitian_eigenvalue(A) -> float:
    A = as_complex_matrix(A)
    return float(np.linalg.eigvalsh((A + A.conj().T) / 2)[0])
