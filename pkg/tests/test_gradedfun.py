import numpy as np
import pytest

from src.errors import InvalidInputError, PreconditionError
from src.experiments.generators import random_nc_function, random_similarity, random_tuple, random_unitary
from src.freepoly import FreePoly, parse
from src.gradedfun import (
    GradedFunction,
    average,
    check_nc_axioms,
    components,
    constant_function,
    direct_sum_residual,
    embed_isometrically,
    evaluate,
    from_scalar_polys,
    similarity_residual,
    stack_components,
    unitary_action,
)
from src.linalg import operator_norm
from src.ncpoints import MatrixTuple


def test_layout_of_identity_and_x1():
    # components (1, x1) at the nilpotent grading-2 point
    u = from_scalar_polys([FreePoly.constant(1.0), FreePoly.variable(1)], d=1)
    lam = MatrixTuple.of(np.array([[0.0, 1.0], [0.0, 0.0]]))
    value = evaluate(u, lam)
    expected = np.array([[1, 0], [0, 1], [0, 1], [0, 0]], dtype=complex)
    np.testing.assert_array_equal(value, expected)


def test_stack_components_inverts_components(rng):
    Q = [rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(4)]
    value = stack_components(Q, 3)
    assert value.shape == (12, 3)
    for a, b in zip(components(value, 3, 4), Q):
        np.testing.assert_array_equal(a, b)


def test_values_are_read_only(point_factory):
    u = GradedFunction(d=2, M=1, evaluator=lambda lam: np.zeros((lam.n, lam.n)))
    value = u(point_factory(2, 2))
    with pytest.raises(ValueError):
        value[0, 0] = 1.0


def test_evaluate_does_not_grow_the_table(rng):
    u = random_nc_function(rng, 2, 3, 2)
    for _ in range(500):
        evaluate(u, random_tuple(rng, 2, 2, 0.5))
    assert len(u.table) == 0


def test_tabulate_fills_the_table_and_later_calls_hit_it(point_factory):
    calls = []

    def _eval(lam):
        calls.append(lam.n)
        return np.zeros((lam.n, lam.n))

    u = GradedFunction(d=2, M=1, evaluator=_eval)
    points = [point_factory(2, 1), point_factory(2, 2)]
    tabulated = u.tabulate(points)
    assert len(u.table) == 2
    again = u(MatrixTuple(tuple(np.array(m) for m in points[1])))
    assert calls == [1, 2]
    assert again is tabulated[1]


def test_sampled_function_table_is_set_at_construction(point_factory):
    points = [point_factory(2, 1), point_factory(2, 2)]
    values = [np.ones((2, 1)), np.ones((4, 2))]
    u = GradedFunction.from_samples(points, values, M=2)
    assert len(u.table) == 2
    np.testing.assert_array_equal(u(points[1]), values[1])
    u(points[0])
    assert len(u.table) == 2
    values[1][0, 0] = 5.0
    assert u(points[1])[0, 0] == 1.0
    with pytest.raises(InvalidInputError, match="no sample"):
        u(point_factory(2, 1))


def test_wrong_value_shape_rejected(point_factory):
    u = GradedFunction(d=2, M=3, evaluator=lambda lam: np.zeros((lam.n, lam.n)))
    with pytest.raises(InvalidInputError):
        u(point_factory(2, 2))
    with pytest.raises(InvalidInputError):
        u(MatrixTuple.scalars(0.1))


def test_from_samples_is_defined_on_samples_only(point_factory):
    lam, mu = point_factory(2, 1), point_factory(2, 1)
    u = GradedFunction.from_samples([lam], [np.ones((2, 1))], M=2)
    np.testing.assert_array_equal(u(lam), np.ones((2, 1)))
    with pytest.raises(InvalidInputError):
        u(mu)


def test_polynomial_functions_satisfy_nc_laws(rng, point_factory):
    u = random_nc_function(rng, 2, 4, 3)
    pairs = [(point_factory(2, int(rng.integers(1, 3))), point_factory(2, int(rng.integers(1, 3)))) for _ in range(50)]
    sims = []
    for _ in range(50):
        n = int(rng.integers(1, 4))
        sims.append((point_factory(2, n), random_similarity(rng, n)))
    report = check_nc_axioms(u, pairs, sims, tol=1e-9)
    assert report.passed
    assert report.errors == []
    assert len(report.cases) == 100


def test_entrywise_conjugation_breaks_similarity_law():
    conj = GradedFunction(d=1, M=1, evaluator=lambda lam: lam[0].conj())
    lam = MatrixTuple.of(np.diag([1j, 0.0]))
    S = np.array([[1.0, 1j], [0.0, 1.0]])
    assert similarity_residual(conj, lam, S) == pytest.approx(2.0)
    assert direct_sum_residual(conj, lam, lam) == pytest.approx(0.0, abs=1e-15)


def test_singular_similarity_is_recorded_not_raised(rng, point_factory):
    u = random_nc_function(rng, 2, 2, 2)
    report = check_nc_axioms(u, [], [(point_factory(2, 2), np.ones((2, 2)))])
    assert len(report.errors) == 1
    assert report.max_similarity_residual == 0.0


def test_unitary_action_preserves_norms_and_nc_laws(rng, point_factory):
    u = random_nc_function(rng, 2, 5, 2)
    U = random_unitary(rng, 5)
    moved = unitary_action(U, u)
    for n in (1, 2, 3):
        lam = point_factory(2, n)
        assert operator_norm(moved(lam)) == pytest.approx(operator_norm(u(lam)), abs=1e-12)
    lam, mu = point_factory(2, 1), point_factory(2, 2)
    assert direct_sum_residual(moved, lam, mu) < 1e-12
    assert similarity_residual(moved, mu, random_similarity(rng, 2)) < 1e-10


def test_unitary_action_preconditions(rng):
    u = random_nc_function(rng, 2, 3, 1)
    with pytest.raises(PreconditionError):
        unitary_action(2 * np.eye(3), u)
    with pytest.raises(InvalidInputError):
        unitary_action(np.eye(2), u)


def test_constant_function_and_average(point_factory):
    one = constant_function([1.0, 0.0], d=2)
    zero = constant_function([0.0, 0.0], d=2)
    lam = point_factory(2, 2)
    np.testing.assert_array_equal(average([one, zero])(lam), 0.5 * one(lam))
    with pytest.raises(InvalidInputError):
        average([one, constant_function([1.0], d=2)])


def test_embed_isometrically_keeps_norms(rng):
    value = rng.normal(size=(2 * 3, 2)) + 0j
    embedded = embed_isometrically(value, 2, 3, 5)
    assert embedded.shape == (10, 2)
    assert operator_norm(embedded) == pytest.approx(operator_norm(value))
    np.testing.assert_allclose(embedded.conj().T @ embedded, value.conj().T @ value)
    with pytest.raises(InvalidInputError):
        embed_isometrically(value, 2, 3, 2)


def test_delta_as_graded_function_is_nc(rng, point_factory):
    delta = parse("[[x1, x2x1]]", 2)
    u = from_scalar_polys(list(delta.entries[0]), d=2)
    lam = point_factory(2, 2)
    assert similarity_residual(u, lam, random_similarity(rng, 2)) < 1e-10


@pytest.mark.parametrize("seed", range(10))
def test_unitary_action_composes(seed, point_factory):
    rng = np.random.default_rng(seed)
    u = random_nc_function(rng, 2, 4, 2)
    U, V = random_unitary(rng, 4), random_unitary(rng, 4)
    lam = point_factory(2, int(rng.integers(1, 4)))
    np.testing.assert_allclose(unitary_action(U @ V, u)(lam), unitary_action(U, unitary_action(V, u))(lam), atol=1e-12)
