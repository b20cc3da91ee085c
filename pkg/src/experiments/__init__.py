"""Seeded experiment scenarios, their configuration and report files."""

from .config import ExperimentConfig, GridSpec, Scenario, Tolerances, load_config
from .scenarios import SCENARIOS, Check, ScenarioOutcome, evaluate_scenario, run_scenario

__all__ = [
    "Check",
    "ExperimentConfig",
    "GridSpec",
    "SCENARIOS",
    "Scenario",
    "ScenarioOutcome",
    "Tolerances",
    "evaluate_scenario",
    "load_config",
    "run_scenario",
]
