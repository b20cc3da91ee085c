import math

import numpy as np
import pytest

from src.errors import CapacityError, InvalidInputError
from src.experiments.generators import (
    make_shifting_sequence,
    normalize_on,
    random_bounded_sequence,
    random_nc_function,
    random_points,
    random_unitary,
    wandered_sequence,
)
from src.experiments.output import read_sequence_samples, write_sequence_samples
from src.gradedfun import check_nc_axioms
from src.linalg import operator_norm
from src.ncpoints import MatrixTuple, nested_grid
from src.wandering import (
    TRACE_COLUMNS,
    SequenceSamples,
    WanderingEngine,
    WanderingOutputBuilder,
    build_unitary,
    coefficient_vectors,
    containment_violation,
    extract_cauchy_subsequence,
    holdout_report,
    limit_bound_check,
    limit_function,
    reassemble,
    run,
    transform,
)


def _basis(M, j):
    v = np.zeros((M, 1), dtype=complex)
    v[j, 0] = 1.0
    return v


def test_shifting_sequence_has_no_raw_cauchy_subsequence():
    samples = make_shifting_sequence(10, 16, 0.5)
    baseline = run(samples, steer=False)
    assert baseline.raw_min_distance == pytest.approx(0.5 * math.sqrt(2.0), abs=1e-12)
    assert len(baseline.subsequence) == 1
    assert not baseline.converged


def test_wandering_collapses_shifting_sequence():
    samples = make_shifting_sequence(10, 16, 0.5)
    result = run(samples)
    assert result.subsequence == list(range(10))
    assert result.converged
    assert result.cauchy_residual <= 1e-12
    assert result.containment_residual <= 1e-9 * samples.B
    assert result.unitarity_residual <= 1e-10
    np.testing.assert_allclose(result.limits[0], 0.5 * _basis(16, 0), atol=1e-12)


def test_single_basis_vector_is_steered_to_first_slot():
    U = build_unitary([_basis(8, 5)], [1], 8)
    np.testing.assert_allclose(transform(U, _basis(8, 5)), _basis(8, 0), atol=1e-14)


def test_repeated_value_needs_no_new_slot():
    point_values = [_basis(6, 3), _basis(6, 3)]
    U = build_unitary(point_values, [1, 1], 6)
    for v in point_values:
        t = transform(U, v)
        np.testing.assert_allclose(t, _basis(6, 0), atol=1e-14)
        assert containment_violation(t, 1) < 1e-14


def test_capacity_error_reports_required_truncation(rng):
    points = random_points(rng, 2, [1, 2, 2], 0.5)
    samples = random_bounded_sequence(rng, points, 2, 8)
    with pytest.raises(CapacityError) as info:
        run(samples)
    assert (info.value.required_M, info.value.available_M) == (9, 8)


@pytest.mark.parametrize("seed", range(20))
def test_containment_and_norms_on_random_sequences(seed):
    rng = np.random.default_rng(seed)
    points = random_points(rng, 2, [1, 2, 2], 0.5)
    samples = random_bounded_sequence(rng, points, 10, 32)
    result = WanderingEngine().run(samples)
    assert result.containment_residual <= 1e-9
    assert result.unitarity_residual <= 1e-10
    for row_v, row_t in zip(samples.values, result.transformed):
        for v, t in zip(row_v, row_t):
            assert abs(operator_norm(t) - operator_norm(v)) <= 1e-12


def test_coefficient_vectors_roundtrip(rng):
    value = rng.normal(size=(2 * 5, 2)) + 1j * rng.normal(size=(2 * 5, 2))
    vectors = coefficient_vectors(value)
    assert len(vectors) == 4
    np.testing.assert_array_equal(vectors[1], value[5:10, 0])
    np.testing.assert_array_equal(reassemble(vectors, 2), value)


def test_greedy_cover_keeps_largest_ball():
    values = [np.array([[x]]) for x in (0.0, 1.0, 0.0, 1.0, 0.0)]
    assert extract_cauchy_subsequence([values], 0.5) == [0, 2, 4]


def test_greedy_cover_ties_go_to_earliest():
    values = [np.array([[x]]) for x in (0.0, 0.5, 1.0)]
    assert extract_cauchy_subsequence([values], 0.5) == [0]


def test_diagonal_refines_point_by_point():
    first = [np.array([[x]]) for x in (0.0, 0.0, 1.0, 0.0)]
    second = [np.array([[x]]) for x in (0.0, 5.0, 0.0, 0.0)]
    assert extract_cauchy_subsequence([first, second], 0.1) == [0, 3]
    with pytest.raises(InvalidInputError):
        extract_cauchy_subsequence([first, second[:2]], 0.1)


def test_bound_is_enforced():
    with pytest.raises(InvalidInputError):
        SequenceSamples.of([MatrixTuple.scalars(0.5)], 2, [[np.array([[1.0], [1.0]])]], 1.0)


def test_ragged_members_are_embedded(rng):
    point = MatrixTuple.scalars(0.5)
    samples = SequenceSamples.from_ragged([point], [[_basis(2, 1)], [_basis(4, 3)]], [2, 4], 1.0)
    assert samples.M == 4
    np.testing.assert_array_equal(samples.values[0][0], _basis(4, 1))
    assert run(samples).converged


def test_wandered_sequence_converges_off_the_construction_points(rng):
    points = random_points(rng, 2, [1, 2, 2], 0.5)
    base = normalize_on(random_nc_function(rng, 2, 32, 3, active=4), points, 1.0)
    samples, functions = wandered_sequence(base, points, 6, [random_unitary(rng, 32) for _ in range(6)], B=1.0)
    result = run(samples)
    assert result.converged
    assert result.subsequence == list(range(6))

    grid = nested_grid(lambda r: random_points(rng, 2, [int(rng.integers(1, 3))], r)[0], radii=[0.2, 0.4], per_level=3)
    assert holdout_report(functions, result, grid).metric_diameter <= 1e-9
    assert limit_bound_check(result, samples.B).passed

    limit = limit_function(functions, result)
    lam, mu = random_points(rng, 2, [1, 2], 0.4)
    assert check_nc_axioms(limit, [(lam, mu)], [], tol=1e-9).passed


def test_trace_and_report(rng):
    samples = make_shifting_sequence(4, 4, 0.5)
    result = run(samples)
    builder = WanderingOutputBuilder()
    frame = builder.trace_frame(result)
    assert list(frame.columns) == TRACE_COLUMNS
    assert len(frame) == samples.m * len(result.subsequence)
    report = builder.build_report(result, include_unitaries=False)
    assert "unitaries" not in report
    assert report["subsequence"] == [0, 1, 2, 3]


def test_samples_file_roundtrip(tmp_path, rng):
    points = random_points(rng, 2, [1, 2], 0.5)
    samples = random_bounded_sequence(rng, points, 3, 5)
    path = tmp_path / "samples.json"
    write_sequence_samples(path, samples)
    loaded = read_sequence_samples(path)
    assert (loaded.K, loaded.M, loaded.gradings) == (3, 5, [1, 2])
    np.testing.assert_array_equal(loaded.values[2][1], samples.values[2][1])


def test_run_is_deterministic(rng):
    points = random_points(rng, 2, [1, 2, 2], 0.5)
    samples = random_bounded_sequence(rng, points, 8, 32)
    first, second = run(samples), run(samples)
    assert first.subsequence == second.subsequence
    assert first.cauchy_residual == second.cauchy_residual
    for U, V in zip(first.unitaries, second.unitaries):
        np.testing.assert_array_equal(U, V)
    for a, b in zip(first.limits, second.limits):
        np.testing.assert_array_equal(a, b)
