from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
import pandas as pd
from pydantic import BaseModel

from src.errors import InvalidInputError
from src.freepoly import evaluate as evaluate_delta
from src.freepoly import FreePolyMatrix, format_matrix, parse
from src.gradedfun import GradedFunction, check_nc_axioms, constant_function
from src.hereditary import ClosureMode, closure_recover, hermitian_defect, kernel_from_function, model_cone_element, positivity_floor
from src.linalg import operator_norm
from src.ncpoints import MatrixTuple, SampleSet, direct_sum, level_tables, metric_distance, nested_grid
from src.uniqueness import FunctionClass, Verdict, is_uniqueness_set, norm_upgrade_check
from src.utils.progress import progress
from src.wandering import (
    DEFAULT_EPS_SCALE,
    SequenceSamples,
    WanderingEngine,
    WanderingOutputBuilder,
    holdout_report,
    limit_bound_check,
    limit_function,
    required_truncation,
)

from .config import ExperimentConfig, Scenario
from .generators import (
    drifting_sequence,
    make_shifting_sequence,
    normalize_on,
    random_nc_function,
    random_point_in_polyhedron,
    random_points,
    random_poly_matrix,
    random_similarity,
    random_tuple,
    random_unitary,
    wandered_sequence,
)
from .output import read_poly_matrix, read_sequence_samples, write_outputs

NORM_PRESERVATION_TOL = 1e-12
HERMITIAN_TOL = 1e-10
INVARIANCE_TOL = 1e-10
NORM_LAW_TOL = 1e-10
NEGATIVE_CONTROL_FLOOR = 0.1
# Active H slots of generated nc functions; the rest of C^M stays empty.
ACTIVE_SLOTS = 4
POLYHEDRON_MARGIN = 0.2


@dataclass(frozen=True)
class Check:
    name: str
    value: float | int | bool
    threshold: float | int | bool
    relation: str = "<="

    @property
    def passed(self) -> bool:
        if self.relation == "<=":
            return self.value <= self.threshold
        if self.relation == ">=":
            return self.value >= self.threshold
        if self.relation == ">":
            return self.value > self.threshold
        return self.value == self.threshold

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "threshold": self.threshold, "relation": self.relation, "passed": self.passed}


@dataclass
class ScenarioOutcome:
    scenario: Scenario
    checks: list[Check]
    details: dict = field(default_factory=dict)
    trace: pd.DataFrame | None = None
    paths: dict[str, Path] = field(default_factory=dict)
    artifacts: dict[str, BaseModel] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 2

    def report(self, config: ExperimentConfig) -> dict:
        return {
            "scenario": self.scenario.value,
            "seed": config.seed,
            "config": config.model_dump(mode="json", exclude={"out_dir"}),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "details": self.details,
        }


def _epsilon(config: ExperimentConfig, B: float) -> float:
    eps = config.tolerances.epsilon
    return eps if eps is not None else DEFAULT_EPS_SCALE * B


def _steered_samples(samples: SequenceSamples, transformed: list[list[np.ndarray]]) -> SequenceSamples:
    return SequenceSamples.of(samples.points, samples.M, transformed, samples.B)


def _max_norm_change(samples: SequenceSamples, transformed: list[list[np.ndarray]]) -> float:
    return max(abs(operator_norm(t) - operator_norm(v)) for row_v, row_t in zip(samples.values, transformed) for v, t in zip(row_v, row_t))


def _sampler(rng: np.random.Generator, d: int, gradings: list[int]) -> Callable[[float], MatrixTuple]:
    return lambda r: random_tuple(rng, d, int(rng.choice(gradings)), r)


def _radii(config: ExperimentConfig) -> list[float]:
    levels = config.grid.levels
    return [config.grid.radius * (k + 1) / levels for k in range(levels)]


def _montel_commutative(config: ExperimentConfig, rng: np.random.Generator) -> ScenarioOutcome:
    tol = config.tolerances
    K = config.sequence_length
    samples = make_shifting_sequence(K, config.M, config.amplitude)
    a = abs(config.amplitude)

    baseline = WanderingEngine(eps=tol.epsilon, rank_tol=tol.rank_tol, steer=False, step_name="baseline").run(samples)
    result = WanderingEngine(eps=tol.epsilon, rank_tol=tol.rank_tol).run(samples)
    expected = a * math.sqrt(2.0) if K >= 2 else 0.0

    checks = [
        Check("raw min pairwise distance - |a|sqrt(2)", abs(result.raw_min_distance - expected), 1e-12),
        Check("cauchy residual", result.cauchy_residual, tol.cauchy),
        Check("subsequence length", len(result.subsequence), K, "=="),
        Check("containment residual", result.containment_residual, tol.containment * samples.B),
        Check("unitarity residual", result.unitarity_residual, tol.unitarity),
    ]
    builder = WanderingOutputBuilder()
    details = {
        "raw_min_pairwise_distance": result.raw_min_distance,
        "baseline": {"subsequence": baseline.subsequence, "cauchy_residual": baseline.cauchy_residual, "converged": baseline.converged},
        "wandering": builder.build_report(result, include_unitaries=False),
    }
    if K >= 3:
        raw_check = norm_upgrade_check(samples, None, 10 * _epsilon(config, samples.B))
        steered_check = norm_upgrade_check(_steered_samples(samples, result.transformed), None, 10 * _epsilon(config, samples.B))
        checks.append(Check("norm upgrade after wandering passes", steered_check.verdict == Verdict.PASS, True, "=="))
        details["norm_upgrade"] = {"raw": raw_check.to_dict(), "steered": steered_check.to_dict()}
    return ScenarioOutcome(Scenario.MONTEL_COMMUTATIVE, checks, details, builder.trace_frame(result))


def _montel_nc(config: ExperimentConfig, rng: np.random.Generator) -> ScenarioOutcome:
    tol = config.tolerances
    d, M, K = config.d, config.M, config.sequence_length
    functions: list[GradedFunction] | None = None
    if config.samples_path is not None:
        samples = read_sequence_samples(config.samples_path)
    else:
        gradings = config.grid.gradings
        points = random_points(rng, d, gradings, config.grid.radius)
        active = min(M, required_truncation(gradings), ACTIVE_SLOTS)
        base = normalize_on(random_nc_function(rng, d, M, config.degree, active=active), points, 1.0)
        samples, functions = wandered_sequence(base, points, K, [random_unitary(rng, M) for _ in range(K)], B=1.0)

    result = WanderingEngine(eps=tol.epsilon, rank_tol=tol.rank_tol).run(samples)
    bound = limit_bound_check(result, samples.B)
    checks = [
        Check("containment residual", result.containment_residual, tol.containment * samples.B),
        Check("unitarity residual", result.unitarity_residual, tol.unitarity),
        Check("norm change under id (x) U", _max_norm_change(samples, result.transformed), NORM_PRESERVATION_TOL * max(samples.B, 1.0)),
        Check("selected diameter - epsilon", result.cauchy_residual - max(result.epsilon), 0.0),
        Check("limit norm - B", bound.max_norm - bound.bound, 1e-12 * max(samples.B, 1.0)),
    ]
    builder = WanderingOutputBuilder()
    details: dict = {"wandering": builder.build_report(result, include_unitaries=False)}
    artifacts: dict[str, BaseModel] = {}

    if functions is not None:
        checks.append(Check("converged", result.converged, True, "=="))
        grid = nested_grid(_sampler(rng, d, config.grid.gradings), radii=_radii(config), per_level=config.grid.per_level)
        holdout = holdout_report(functions, result, grid)
        checks.append(Check("holdout metric diameter", holdout.metric_diameter, tol.containment))
        details["holdout"] = holdout.to_dict()

        limit = limit_function(functions, result)
        pairs = [(random_tuple(rng, d, 1, config.grid.radius), random_tuple(rng, d, 2, config.grid.radius)) for _ in range(10)]
        sims = [(random_tuple(rng, d, 2, config.grid.radius), random_similarity(rng, 2)) for _ in range(10)]
        nc = check_nc_axioms(limit, pairs, sims, tol.nc)
        checks.append(Check("limit direct-sum residual", nc.max_direct_sum_residual, tol.nc))
        checks.append(Check("limit similarity residual", nc.max_similarity_residual, tol.nc))
        details["limit_nc"] = nc.to_dict()
        artifacts["limit"] = limit.to_payload(list(samples.points))

    if samples.K >= 3:
        upgrade = norm_upgrade_check(_steered_samples(samples, result.transformed), None, 10 * max(result.epsilon))
        details["norm_upgrade"] = upgrade.to_dict()
    return ScenarioOutcome(Scenario.MONTEL_NC, checks, details, builder.trace_frame(result), artifacts=artifacts)


def _conjugate_embedding(d: int) -> GradedFunction:
    """lam -> entrywise conjugate of lam_1; graded but not nc."""
    return GradedFunction(d=d, M=1, evaluator=lambda lam: lam[0].conj(), descriptor="conj(x1)")


def _nc_axioms(config: ExperimentConfig, rng: np.random.Generator) -> ScenarioOutcome:
    tol = config.tolerances
    d, M, r = config.d, config.M, config.grid.radius
    u = random_nc_function(rng, d, M, config.degree)

    progress.update_status("nc-axioms", u.descriptor, "Sampling cases")
    pairs = [(random_tuple(rng, d, int(rng.integers(1, 3)), r), random_tuple(rng, d, int(rng.integers(1, 3)), r)) for _ in range(config.cases)]
    sims = []
    for _ in range(config.cases):
        n = int(rng.integers(1, 4))
        sims.append((random_tuple(rng, d, n, r), random_similarity(rng, n)))
    report = check_nc_axioms(u, pairs, sims, tol.nc)

    law = 0.0
    for _ in range(config.cases):
        delta = random_poly_matrix(rng, d, int(rng.integers(1, 3)), int(rng.integers(1, 3)), config.degree)
        lam = random_tuple(rng, d, int(rng.integers(1, 3)), r)
        mu = random_tuple(rng, d, int(rng.integers(1, 3)), r)
        joined = operator_norm(evaluate_delta(delta, direct_sum(lam, mu)))
        law = max(law, abs(joined - max(operator_norm(evaluate_delta(delta, lam)), operator_norm(evaluate_delta(delta, mu)))))

    witness = MatrixTuple(tuple([np.diag([1j, 0.0])] + [np.zeros((2, 2)) for _ in range(d - 1)]))
    control = check_nc_axioms(_conjugate_embedding(d), [], [(witness, np.array([[1.0, 1j], [0.0, 1.0]]))], tol.nc)
    progress.update_status("nc-axioms", u.descriptor, "Done")

    checks = [
        Check("direct-sum residual", report.max_direct_sum_residual, tol.nc),
        Check("similarity residual", report.max_similarity_residual, tol.nc),
        Check("case errors", len(report.errors), 0, "=="),
        Check("norm direct-sum law defect", law, NORM_LAW_TOL),
        Check("non-nc control similarity residual", control.max_similarity_residual, NEGATIVE_CONTROL_FLOOR, ">"),
    ]
    trace = pd.DataFrame(
        [{"kind": c.kind, "index": c.index, "residual": c.residual} for c in report.cases],
        columns=["kind", "index", "residual"],
    )
    details = {"nc": report.to_dict(), "norm_law_defect": law, "control": control.to_dict()}
    return ScenarioOutcome(Scenario.NC_AXIOMS, checks, details, trace)


def _default_delta(d: int) -> str:
    return "[[" + ", ".join(f"x{j}" for j in range(1, d + 1)) + "]]"


def _load_delta(config: ExperimentConfig) -> FreePolyMatrix:
    if config.delta_path is None:
        return parse(config.delta or _default_delta(config.d), config.d)
    delta = read_poly_matrix(config.delta_path)
    if delta.d != config.d:
        raise InvalidInputError(f"{config.delta_path} holds a matrix in d={delta.d} variables, config has d={config.d}")
    return delta


def _cone_closure(config: ExperimentConfig, rng: np.random.Generator) -> ScenarioOutcome:
    tol = config.tolerances
    d, M, K = config.d, config.M, config.sequence_length
    delta = _load_delta(config)
    points = SampleSet.of([random_point_in_polyhedron(rng, delta, n, POLYHEDRON_MARGIN) for n in config.grid.gradings])
    base = normalize_on(random_nc_function(rng, d, M, config.degree, active=min(M, ACTIVE_SLOTS)), points, 1.0)
    samples, _ = drifting_sequence(base, points, K)

    checks = []
    details: dict = {"delta": format_matrix(delta)}
    rows = []
    for mode in (ClosureMode.CONE_P, ClosureMode.MODEL_CONE):
        report = closure_recover(samples, points, mode, delta, eps=tol.epsilon, rank_tol=tol.rank_tol)
        checks.append(Check(f"{mode.value} closure residual", report.residual, tol.kernel))
        checks.append(Check(f"{mode.value} kernel invariance", report.invariance_residual, INVARIANCE_TOL))
        details[mode.value] = report.to_dict()
        rows.extend({"pair_index": r["pair_index"], "distance": r["distance"], "mode": mode.value} for r in report.pair_rows())

    cone_p = kernel_from_function(base)
    model = model_cone_element(delta, base)
    checks.extend(
        [
            Check("cone-P positivity floor", positivity_floor(cone_p, points), -tol.psd_floor, ">="),
            Check("model-cone positivity floor", positivity_floor(model, points), -tol.psd_floor, ">="),
            Check("cone-P hermitian defect", hermitian_defect(cone_p, points), HERMITIAN_TOL),
            Check("model-cone hermitian defect", hermitian_defect(model, points), HERMITIAN_TOL),
        ]
    )
    return ScenarioOutcome(Scenario.CONE_CLOSURE, checks, details, pd.DataFrame(rows, columns=["pair_index", "distance", "mode"]))


def _vandermonde_oracle(xs: list[float], degree: int) -> bool:
    if len(xs) < degree + 1:
        return False
    V = np.vander(np.asarray(xs), degree + 1, increasing=True)
    return bool(abs(np.linalg.det(V[: degree + 1])) > 0.0)


def _uniqueness(config: ExperimentConfig, rng: np.random.Generator) -> ScenarioOutcome:
    tol = config.tolerances
    quadratic = FunctionClass(1, 2)
    three = [0.1, 0.2, 0.3]
    full = is_uniqueness_set([MatrixTuple.scalars(x) for x in three], quadratic, tol.rank_tol)
    short = is_uniqueness_set([MatrixTuple.scalars(x) for x in three[:2]], quadratic, tol.rank_tol)

    linear2 = FunctionClass(2, 1)
    generic = is_uniqueness_set([random_tuple(rng, 2, 2)], linear2, tol.rank_tol)

    cubic = FunctionClass(1, 3)
    growing: list[MatrixTuple] = []
    flags = []
    for x in rng.uniform(-1.0, 1.0, 6):
        growing.append(MatrixTuple.scalars(float(x)))
        flags.append(is_uniqueness_set(growing, cubic, tol.rank_tol))
    monotone = all(not (a and not b) for a, b in zip(flags, flags[1:]))

    K, M = config.sequence_length, config.M
    raw = make_shifting_sequence(K, M, config.amplitude)
    result = WanderingEngine(eps=tol.epsilon, rank_tol=tol.rank_tol).run(raw)
    upgrade_tol = 10 * _epsilon(config, raw.B)
    raw_check = norm_upgrade_check(raw, None, upgrade_tol)
    steered_check = norm_upgrade_check(_steered_samples(raw, result.transformed), None, upgrade_tol)

    checks = [
        Check("{0.1, 0.2, 0.3} is a uniqueness set for degree <= 2", full, True, "=="),
        Check("{0.1, 0.2} is a uniqueness set for degree <= 2", short, False, "=="),
        Check("agrees with Vandermonde oracle", (full, short) == (_vandermonde_oracle(three, 2), _vandermonde_oracle(three[:2], 2)), True, "=="),
        Check("generic grading-2 point separates degree <= 1 in 2 variables", generic, True, "=="),
        Check("adding points never breaks uniqueness", monotone, True, "=="),
        Check("raw shifting sequence verdict is inconclusive-weak", raw_check.verdict == Verdict.INCONCLUSIVE_WEAK, True, "=="),
        Check("steered shifting sequence verdict is pass", steered_check.verdict == Verdict.PASS, True, "=="),
    ]
    details = {
        "class": quadratic.describe(),
        "monotone_flags": flags,
        "norm_upgrade": {"raw": raw_check.to_dict(), "steered": steered_check.to_dict()},
        "note": "uniqueness is decided relative to the stated polynomial class only",
    }
    return ScenarioOutcome(Scenario.UNIQUENESS, checks, details)


def _metric_demo(config: ExperimentConfig, rng: np.random.Generator) -> ScenarioOutcome:
    tol = config.tolerances
    d, M = config.d, config.M
    grid = nested_grid(_sampler(rng, d, config.grid.gradings), radii=_radii(config), per_level=config.grid.per_level)

    one = constant_function([1.0] + [0.0] * (M - 1), d)
    zero = constant_function([0.0] * M, d)
    distance = metric_distance(level_tables(grid, one), level_tables(grid, zero), grid)
    expected = sum(0.5 * w for w in grid.weights)

    pool = [random_nc_function(rng, d, M, config.degree) for _ in range(12)]
    tables = [level_tables(grid, f) for f in pool]
    triangle = 0.0
    rows = []
    for t in range(2 * config.cases):
        a, b, c = (int(j) for j in rng.choice(len(pool), size=3, replace=False))
        ab = metric_distance(tables[a], tables[b], grid)
        bc = metric_distance(tables[b], tables[c], grid)
        ac = metric_distance(tables[a], tables[c], grid)
        triangle = max(triangle, ac - ab - bc)
        rows.append({"triple": t, "d_ac": ac, "d_ab_plus_d_bc": ab + bc})
    symmetric = max(abs(metric_distance(tables[0], tables[1], grid) - metric_distance(tables[1], tables[0], grid)), metric_distance(tables[0], tables[0], grid))

    checks = [
        Check("constant-difference distance error", abs(distance - expected), tol.metric),
        Check("triangle inequality defect", triangle, tol.metric),
        Check("symmetry and identity defect", symmetric, tol.metric),
    ]
    details = {"levels": len(grid), "weights": list(grid.weights), "constant_difference_distance": distance, "expected": expected}
    return ScenarioOutcome(Scenario.METRIC_DEMO, checks, details, pd.DataFrame(rows, columns=["triple", "d_ac", "d_ab_plus_d_bc"]))


SCENARIOS: dict[Scenario, Callable[[ExperimentConfig, np.random.Generator], ScenarioOutcome]] = {
    Scenario.MONTEL_COMMUTATIVE: _montel_commutative,
    Scenario.MONTEL_NC: _montel_nc,
    Scenario.NC_AXIOMS: _nc_axioms,
    Scenario.CONE_CLOSURE: _cone_closure,
    Scenario.UNIQUENESS: _uniqueness,
    Scenario.METRIC_DEMO: _metric_demo,
}


def evaluate_scenario(config: ExperimentConfig) -> ScenarioOutcome:
    """Run the scenario in memory; deterministic for a fixed config."""
    progress.update_status(config.scenario.value, f"seed={config.seed}", "Running")
    outcome = SCENARIOS[config.scenario](config, np.random.default_rng(config.seed))
    progress.update_status(config.scenario.value, None, "Done" if outcome.passed else "Failed")
    return outcome


def run_scenario(config: ExperimentConfig) -> ScenarioOutcome:
    """Run, then write report.json, trace.csv and any artifacts under ``config.out_dir``."""
    outcome = evaluate_scenario(config)
    outcome.paths = write_outputs(config.out_dir, outcome.report(config), outcome.trace, outcome.artifacts)
    return outcome
