from __future__ import annotations

import json
import os
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.errors import InvalidInputError


class Scenario(str, Enum):
    MONTEL_COMMUTATIVE = "montel-commutative"
    MONTEL_NC = "montel-nc"
    NC_AXIOMS = "nc-axioms"
    CONE_CLOSURE = "cone-closure"
    UNIQUENESS = "uniqueness"
    METRIC_DEMO = "metric-demo"


SCENARIO_ORDER = [
    ("Shifting basis in l2 (commutative Montel)", Scenario.MONTEL_COMMUTATIVE),
    ("Wandering unitaries on nc points", Scenario.MONTEL_NC),
    ("Direct-sum and similarity laws", Scenario.NC_AXIOMS),
    ("Cone P and model cone closure", Scenario.CONE_CLOSURE),
    ("Sets of uniqueness and norm upgrade", Scenario.UNIQUENESS),
    ("Exhaustion metric sanity", Scenario.METRIC_DEMO),
]

# Tolerance overridden by --tol for each scenario.
PRIMARY_TOLERANCE = {
    Scenario.MONTEL_COMMUTATIVE: "cauchy",
    Scenario.MONTEL_NC: "containment",
    Scenario.NC_AXIOMS: "nc",
    Scenario.CONE_CLOSURE: "kernel",
    Scenario.UNIQUENESS: "rank_tol",
    Scenario.METRIC_DEMO: "metric",
}

# Scenario defaults for (truncation M, sequence length K).
SCENARIO_SIZES = {
    Scenario.MONTEL_COMMUTATIVE: (16, 10),
    Scenario.MONTEL_NC: (32, 10),
    Scenario.NC_AXIOMS: (4, 1),
    Scenario.CONE_CLOSURE: (64, 12),
    Scenario.UNIQUENESS: (32, 20),
    Scenario.METRIC_DEMO: (2, 1),
}

ENV_OUT_DIR = "NCMONTEL_OUT_DIR"
ENV_SEED = "NCMONTEL_SEED"


class Tolerances(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rank_tol: float = 1e-10
    epsilon: Optional[float] = None
    cauchy: float = 1e-12
    containment: float = 1e-9
    unitarity: float = 1e-10
    nc: float = 1e-9
    kernel: float = 1e-8
    psd_floor: float = 1e-10
    metric: float = 1e-12


class GridSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gradings: list[int] = Field(default_factory=lambda: [1, 2, 2])
    levels: int = 3
    per_level: int = 3
    radius: float = 0.5

    @field_validator("gradings")
    @classmethod
    def _positive_gradings(cls, v: list[int]) -> list[int]:
        if not v or any(n <= 0 for n in v):
            raise ValueError("gradings must be a nonempty list of positive integers")
        return v


class ExperimentConfig(BaseModel):
    """Everything a scenario run depends on; same config and seed give the same report."""

    model_config = ConfigDict(extra="forbid")

    scenario: Scenario
    seed: int = 0
    tolerances: Tolerances = Field(default_factory=Tolerances)
    truncation: Optional[int] = Field(default=None, gt=0)
    K: Optional[int] = Field(default=None, gt=0)
    d: int = Field(default=2, ge=1, le=3)
    degree: int = Field(default=3, ge=0, le=3)
    cases: int = Field(default=50, gt=0)
    amplitude: float = 0.5
    grid: GridSpec = Field(default_factory=GridSpec)
    delta: Optional[str] = None
    delta_path: Optional[Path] = None
    samples_path: Optional[Path] = None
    out_dir: Path = Path("out")

    @model_validator(mode="after")
    def _one_delta_source(self) -> "ExperimentConfig":
        if self.delta is not None and self.delta_path is not None:
            raise ValueError("give delta or delta_path, not both")
        return self

    @property
    def M(self) -> int:
        return self.truncation if self.truncation is not None else SCENARIO_SIZES[self.scenario][0]

    @property
    def sequence_length(self) -> int:
        return self.K if self.K is not None else SCENARIO_SIZES[self.scenario][1]

    @property
    def primary_tolerance(self) -> str:
        return PRIMARY_TOLERANCE[self.scenario]


def _read_config_file(path: Path) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInputError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInputError(f"config file {path} must hold a JSON object")
    return data


def _env_overrides() -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    if os.getenv(ENV_OUT_DIR):
        overrides["out_dir"] = os.getenv(ENV_OUT_DIR)
    if os.getenv(ENV_SEED):
        try:
            overrides["seed"] = int(os.getenv(ENV_SEED))
        except ValueError:
            raise InvalidInputError(f"{ENV_SEED} must be an integer, got {os.getenv(ENV_SEED)!r}")
    return overrides


def load_config(
    scenario: str | None,
    *,
    config_path: Path | None = None,
    seed: int | None = None,
    tol: float | None = None,
    truncation: int | None = None,
    out_dir: Path | None = None,
) -> ExperimentConfig:
    """Merge defaults < config file < environment < explicit flags, then validate."""
    data: dict[str, Any] = {}
    if config_path is not None:
        data.update(_read_config_file(config_path))
    data.update(_env_overrides())
    if scenario is not None:
        data["scenario"] = scenario
    if seed is not None:
        data["seed"] = seed
    if truncation is not None:
        data["truncation"] = truncation
    if out_dir is not None:
        data["out_dir"] = str(out_dir)

    config = ExperimentConfig.model_validate(data)
    if tol is not None:
        tolerances = config.tolerances.model_copy(update={config.primary_tolerance: float(tol)})
        config = config.model_copy(update={"tolerances": tolerances})
    return config
