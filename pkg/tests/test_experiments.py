import json

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from src.cli.input import UsageError, parse_cli_inputs
from src.errors import InvalidInputError
from src.experiments import Scenario, evaluate_scenario, load_config, run_scenario
from src.experiments.cli import main
from src.experiments.config import ENV_OUT_DIR, ENV_SEED
from src.experiments.generators import make_shifting_sequence, random_similarity
from src.data.models import SampledFunctionPayload
from src.experiments.output import (
    REPORT_NAME,
    TRACE_NAME,
    read_poly_matrix,
    read_sampled_function,
    render_report,
    write_poly_matrix,
    write_sequence_samples,
)
from src.freepoly import format_matrix, parse
from src.linalg import condition_number, operator_norm
from src.ncpoints import MatrixTuple


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv(ENV_OUT_DIR, raising=False)
    monkeypatch.delenv(ENV_SEED, raising=False)


def test_config_precedence(tmp_path, monkeypatch):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"seed": 3, "truncation": 12, "out_dir": "from-file"}))
    config = load_config("metric-demo", config_path=path)
    assert (config.seed, config.M, str(config.out_dir)) == (3, 12, "from-file")

    monkeypatch.setenv(ENV_SEED, "5")
    assert load_config("metric-demo", config_path=path).seed == 5
    assert load_config("metric-demo", config_path=path, seed=7).seed == 7


def test_tol_overrides_primary_tolerance():
    config = load_config("cone-closure", tol=1e-6)
    assert config.tolerances.kernel == 1e-6
    assert config.tolerances.containment == 1e-9
    assert load_config("montel-commutative").sequence_length == 10


def test_bad_configs_are_rejected(tmp_path, monkeypatch):
    with pytest.raises(ValidationError):
        load_config("no-such-scenario")
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(InvalidInputError):
        load_config("metric-demo", config_path=path)
    with pytest.raises(InvalidInputError):
        load_config("metric-demo", config_path=tmp_path / "missing.json")
    path.write_text(json.dumps({"unknown_field": 1}))
    with pytest.raises(ValidationError):
        load_config("metric-demo", config_path=path)
    monkeypatch.setenv(ENV_SEED, "abc")
    with pytest.raises(InvalidInputError):
        load_config("metric-demo")


def test_cli_parsing_never_exits():
    inputs = parse_cli_inputs(["uniqueness", "--seed", "4", "--tol", "1e-8", "--truncation", "16"])
    assert (inputs.scenario, inputs.seed, inputs.tol, inputs.truncation) == ("uniqueness", 4, 1e-8, 16)
    with pytest.raises(UsageError):
        parse_cli_inputs(["uniqueness", "--bogus"])
    with pytest.raises(UsageError):
        parse_cli_inputs([], interactive=False)


@pytest.mark.parametrize("scenario", [s.value for s in Scenario])
def test_every_scenario_passes_with_defaults(scenario, tmp_path):
    assert main([scenario, "--out", str(tmp_path)]) == 0
    document = json.loads((tmp_path / REPORT_NAME).read_text())
    assert document["result"]["scenario"] == scenario
    assert document["result"]["passed"] is True
    assert all(check["passed"] for check in document["result"]["checks"])


def test_exit_codes(tmp_path):
    assert main(["no-such-scenario", "--out", str(tmp_path)]) == 1
    assert main(["metric-demo", "--seed", "x"]) == 1
    assert main(["metric-demo", "--tol", "-1", "--out", str(tmp_path)]) == 2
    assert main(["montel-commutative", "--truncation", "4", "--out", str(tmp_path)]) == 1


@pytest.mark.parametrize("scenario", ["nc-axioms", "metric-demo", "montel-commutative"])
def test_reports_are_deterministic(scenario, tmp_path):
    first = run_scenario(load_config(scenario, seed=11, out_dir=tmp_path / "a"))
    second = run_scenario(load_config(scenario, seed=11, out_dir=tmp_path / "b"))
    a = json.loads(first.paths["report"].read_text())
    b = json.loads(second.paths["report"].read_text())
    assert a["result"] == b["result"]
    assert (tmp_path / "a" / TRACE_NAME).read_text() == (tmp_path / "b" / TRACE_NAME).read_text()


def test_render_report_sorts_keys():
    text = render_report({"b": 1, "a": [1.5]}, timestamp="t")
    assert json.loads(text) == {"meta": {"generated_at": "t"}, "result": {"a": [1.5], "b": 1}}
    assert text.index('"a"') < text.index('"b"')


def test_montel_nc_reads_samples_file(tmp_path):
    samples_path = tmp_path / "samples.json"
    write_sequence_samples(samples_path, make_shifting_sequence(5, 8, 0.25))
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"samples_path": str(samples_path)}))
    outcome = evaluate_scenario(load_config("montel-nc", config_path=config_path, out_dir=tmp_path))
    assert outcome.passed
    assert outcome.details["wandering"]["subsequence"] == [0, 1, 2, 3, 4]
    assert isinstance(outcome.trace, pd.DataFrame)


def test_cone_closure_trace_has_both_modes(tmp_path):
    outcome = evaluate_scenario(load_config("cone-closure", out_dir=tmp_path))
    assert set(outcome.trace["mode"]) == {"cone-P", "model-cone"}
    assert outcome.exit_code == 0


def test_random_similarity_condition_is_bounded():
    rng = np.random.default_rng(0)
    for n in (1, 2, 3, 4):
        for _ in range(20):
            assert condition_number(random_similarity(rng, n)) <= 10.0


def test_cone_closure_reads_delta_file(tmp_path):
    delta = parse("[[x1, 0.5x2]]", 2)
    delta_path = tmp_path / "delta.json"
    write_poly_matrix(delta_path, delta)
    assert read_poly_matrix(delta_path) == delta

    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"delta_path": str(delta_path)}))
    outcome = evaluate_scenario(load_config("cone-closure", config_path=config_path, out_dir=tmp_path))
    assert outcome.passed
    assert outcome.details["delta"] == format_matrix(delta)


def test_delta_sources_are_exclusive_and_checked(tmp_path):
    delta_path = tmp_path / "delta.json"
    write_poly_matrix(delta_path, parse("[[x3]]", 3))
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"delta": "[[x1]]", "delta_path": str(delta_path)}))
    with pytest.raises(ValidationError):
        load_config("cone-closure", config_path=config_path)
    assert main(["cone-closure", "--config", str(config_path), "--out", str(tmp_path)]) == 1

    config_path.write_text(json.dumps({"delta_path": str(delta_path)}))
    with pytest.raises(InvalidInputError, match="d=3"):
        evaluate_scenario(load_config("cone-closure", config_path=config_path, out_dir=tmp_path))


def test_montel_nc_writes_limit_function(tmp_path):
    outcome = run_scenario(load_config("montel-nc", out_dir=tmp_path))
    assert outcome.passed
    path = outcome.paths["limit"]
    assert path == tmp_path / "limit.json"

    payload = SampledFunctionPayload.model_validate_json(path.read_text())
    points = [MatrixTuple.from_payload(s.point) for s in payload.samples]
    assert [p.n for p in points] == [1, 2, 2]
    limit = read_sampled_function(path)
    assert len(limit.table) == 3
    for p in points:
        assert operator_norm(limit(p)) <= 1.0 + 1e-12


def test_malformed_artifact_files(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{}")
    with pytest.raises(InvalidInputError, match="malformed"):
        read_sampled_function(path)
    with pytest.raises(InvalidInputError, match="malformed"):
        read_poly_matrix(path)
    with pytest.raises(InvalidInputError, match="cannot read"):
        read_poly_matrix(tmp_path / "missing.json")
