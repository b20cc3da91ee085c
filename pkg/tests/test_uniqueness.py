import numpy as np
import pytest

from src.errors import InvalidInputError
from src.experiments.generators import make_shifting_sequence, random_points
from src.ncpoints import MatrixTuple, SampleSet
from src.uniqueness import (
    FunctionClass,
    Verdict,
    evaluation_matrix,
    evaluation_rank,
    is_uniqueness_set,
    norm_upgrade_check,
    probe_set,
    weak_probe,
)
from src.wandering import SequenceSamples, run


def _scalars(*xs):
    return [MatrixTuple.scalars(x) for x in xs]


def test_three_distinct_scalars_determine_quadratics():
    cls = FunctionClass(1, 2)
    assert cls.dim == 3
    assert is_uniqueness_set(_scalars(0.1, 0.2, 0.3), cls)
    assert not is_uniqueness_set(_scalars(0.1, 0.2), cls)
    assert not is_uniqueness_set(_scalars(0.1, 0.2, 0.1), cls)


@pytest.mark.parametrize("xs", [(0.1, 0.2, 0.3), (-0.5, 0.0, 0.7), (0.25, 0.5)])
def test_agrees_with_vandermonde_determinant(xs):
    cls = FunctionClass(1, 2)
    square = np.vander(np.asarray(xs), 3, increasing=True)
    expected = len(xs) == 3 and abs(np.linalg.det(square)) > 1e-12
    assert is_uniqueness_set(_scalars(*xs), cls) == expected


def test_generic_matrix_point_separates_linear_polys(rng):
    points = random_points(rng, 2, [2], 0.5)
    assert is_uniqueness_set(points, FunctionClass(2, 1))
    # a grading-1 point cannot separate 1, x1, x2
    assert not is_uniqueness_set(random_points(rng, 2, [1], 0.5), FunctionClass(2, 1))


def test_adding_points_never_breaks_uniqueness(rng):
    cls = FunctionClass(1, 3)
    points = []
    flags = []
    for x in rng.uniform(-1.0, 1.0, 6):
        points.append(MatrixTuple.scalars(float(x)))
        flags.append(is_uniqueness_set(points, cls))
    assert flags == sorted(flags)
    assert flags[-1]


def test_evaluation_matrix_columns_follow_basis():
    cls = FunctionClass(2, 1)
    lam = MatrixTuple.scalars(2.0, 3.0)
    np.testing.assert_array_equal(evaluation_matrix([lam], cls), [[1.0, 2.0, 3.0]])
    assert evaluation_rank([], cls) == 0
    with pytest.raises(InvalidInputError):
        evaluation_matrix([MatrixTuple.scalars(1.0)], cls)


def test_pairing_set_size_and_weak_pairing():
    probes = probe_set(2, 16)
    assert len(probes) == 2 * 2 * 8
    label, alpha, beta = probes[3]
    assert label == (0, 0, 3)
    value = np.zeros((32, 2), dtype=complex)
    value[3, 0] = 2.0
    assert weak_probe([value, 2 * value], alpha, beta) == [2.0, 4.0]


def test_shifting_sequence_is_inconclusive_weak():
    report = norm_upgrade_check(make_shifting_sequence(20, 32, 0.5), tol=1e-6)
    assert report.weak_oscillation == 0.0
    assert report.gram_oscillation == pytest.approx(0.0, abs=1e-15)
    assert report.norm_oscillation == pytest.approx(0.5 * np.sqrt(2.0))
    assert report.verdict is Verdict.INCONCLUSIVE_WEAK
    assert report.tail == list(range(10, 20))


def test_steered_shifting_sequence_passes():
    raw = make_shifting_sequence(20, 32, 0.5)
    result = run(raw)
    steered = SequenceSamples.of(raw.points, raw.M, result.transformed, raw.B)
    assert norm_upgrade_check(steered, tol=1e-6).verdict is Verdict.PASS


def test_visible_oscillation_fails():
    # the tail moves inside the probed slots, so probes see it
    raw = make_shifting_sequence(6, 8, 0.5)
    report = norm_upgrade_check(raw, tol=1e-6)
    assert report.verdict is Verdict.FAIL
    assert report.witness["weak"]["point_index"] == 0


def test_norm_upgrade_needs_three_members():
    with pytest.raises(InvalidInputError):
        norm_upgrade_check(make_shifting_sequence(2, 4, 0.5))


def test_holdout_restricts_points():
    raw = make_shifting_sequence(5, 8, 0.5)
    report = norm_upgrade_check(raw, SampleSet.of([raw.points[0]]), tol=1e-6)
    assert report.probes_per_point == [8]


@pytest.mark.parametrize("seed", range(10))
def test_weak_pairing_is_linear_in_alpha_and_conjugate_linear_in_beta(seed):
    rng = np.random.default_rng(seed)
    values = [rng.normal(size=(6, 2)) + 1j * rng.normal(size=(6, 2)) for _ in range(3)]
    a1, a2 = rng.normal(size=2) + 1j * rng.normal(size=2), rng.normal(size=2) + 1j * rng.normal(size=2)
    b1, b2 = rng.normal(size=6) + 1j * rng.normal(size=6), rng.normal(size=6) + 1j * rng.normal(size=6)
    c = complex(rng.normal(), rng.normal())
    in_alpha = weak_probe(values, a1 + c * a2, b1)
    expected = [x + c * y for x, y in zip(weak_probe(values, a1, b1), weak_probe(values, a2, b1))]
    np.testing.assert_allclose(in_alpha, expected, atol=1e-12)
    in_beta = weak_probe(values, a1, b1 + c * b2)
    expected = [x + np.conj(c) * y for x, y in zip(weak_probe(values, a1, b1), weak_probe(values, a1, b2))]
    np.testing.assert_allclose(in_beta, expected, atol=1e-12)


def test_unmatched_holdout_points_are_reported():
    raw = make_shifting_sequence(5, 8, 0.5)
    stray = SampleSet.of([MatrixTuple.scalars(0.9)])
    report = norm_upgrade_check(raw, stray, tol=1e-6)
    assert report.unmatched_holdout == 1
    assert report.probes_per_point == [8]
    assert report.to_dict()["unmatched_holdout"] == 1

    mixed = SampleSet.of([raw.points[0], MatrixTuple.scalars(0.9)])
    assert norm_upgrade_check(raw, mixed, tol=1e-6).unmatched_holdout == 1


def test_report_note_explains_fail():
    note = norm_upgrade_check(make_shifting_sequence(6, 8, 0.5), tol=1e-6).to_dict()["note"]
    assert "vacuously" in note
