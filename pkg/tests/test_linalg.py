import numpy as np
import pytest

from src.errors import InvalidInputError, PreconditionError
from src.experiments.generators import random_matrix, random_unitary
from src.linalg import (
    ampliate,
    as_complex_matrix,
    block_diag,
    complete_to_unitary,
    condition_number,
    gram_residual,
    min_hermitian_eigenvalue,
    operator_norm,
    orthonormal_increment,
    unitarity_residual,
)


def test_operator_norm_is_largest_singular_value():
    assert operator_norm(np.diag([3.0, 1j])) == pytest.approx(3.0)
    assert operator_norm(np.zeros((4, 2))) == 0.0


def test_as_complex_matrix_rejects_non_finite():
    with pytest.raises(InvalidInputError):
        as_complex_matrix([[1.0, np.nan]])
    with pytest.raises(InvalidInputError):
        as_complex_matrix(np.zeros((2, 2, 2)))


def test_orthonormal_increment_adds_only_new_directions():
    e0, e1 = np.eye(3)[0], np.eye(3)[1]
    added = orthonormal_increment([e0], [e0 + e1, 2 * e0])
    assert len(added) == 1
    assert abs(abs(np.vdot(added[0], e1)) - 1.0) < 1e-14


def test_orthonormal_increment_drops_dependent_candidates(rng):
    v = random_matrix(rng, 5, 1).reshape(-1)
    w = random_matrix(rng, 5, 1).reshape(-1)
    added = orthonormal_increment([], [v, 2 * v, w, v - 3 * w])
    assert len(added) == 2
    assert gram_residual(added) < 1e-14


def test_orthonormal_increment_requires_orthonormal_existing():
    with pytest.raises(PreconditionError):
        orthonormal_increment([np.array([2.0, 0.0])], [np.array([0.0, 1.0])])


def test_complete_to_unitary_maps_sources_to_targets(rng):
    dim = 6
    S = random_unitary(rng, dim)
    T = random_unitary(rng, dim)
    pairs = [(S[:, j], T[:, j]) for j in range(3)]
    U = complete_to_unitary(pairs, dim)
    assert unitarity_residual(U) < 1e-12
    for s, t in pairs:
        assert np.linalg.norm(U @ s - t) < 1e-12


def test_complete_to_unitary_edge_cases():
    np.testing.assert_array_equal(complete_to_unitary([], 3), np.eye(3))
    e = np.eye(2)
    with pytest.raises(InvalidInputError):
        complete_to_unitary([(e[0], e[0]), (e[1], e[1]), (e[0], e[1])], 2)
    with pytest.raises(PreconditionError):
        complete_to_unitary([(2 * e[0], e[1])], 2)


def test_ampliate_is_block_diagonal(rng):
    U = random_unitary(rng, 3)
    np.testing.assert_allclose(ampliate(U, 2), block_diag(U, U))


def test_condition_number_and_min_eigenvalue():
    assert condition_number(np.diag([2.0, 0.5])) == pytest.approx(4.0)
    assert condition_number(np.zeros((2, 2))) == float("inf")
    assert min_hermitian_eigenvalue(np.diag([-1.0, 2.0])) == pytest.approx(-1.0)


@pytest.mark.parametrize("seed", range(20))
def test_operator_norm_of_adjoint_and_direct_sum(seed):
    rng = np.random.default_rng(seed)
    A = random_matrix(rng, 4, 3)
    B = random_matrix(rng, 2)
    assert operator_norm(A.conj().T) == pytest.approx(operator_norm(A), rel=1e-12)
    assert abs(operator_norm(block_diag(A, B)) - max(operator_norm(A), operator_norm(B))) <= 1e-12


@pytest.mark.parametrize("seed", range(100))
def test_complete_to_unitary_on_random_frames(seed):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(2, 9))
    count = int(rng.integers(0, dim + 1))
    S = random_unitary(rng, dim)
    T = random_unitary(rng, dim)
    pairs = [(S[:, j], T[:, j]) for j in range(count)]
    U = complete_to_unitary(pairs, dim)
    assert unitarity_residual(U) <= 1e-11
    for s, t in pairs:
        assert np.linalg.norm(U @ s - t) <= 1e-11
