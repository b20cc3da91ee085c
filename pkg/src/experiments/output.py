from __future__ import annotations

import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import TypeVar

import pandas as pd
from pydantic import BaseModel, ValidationError

from src.data.models import FreePolyMatrixPayload, SampledFunctionPayload, SequenceSamplesPayload
from src.errors import InvalidInputError
from src.freepoly import FreePolyMatrix
from src.gradedfun import GradedFunction
from src.wandering import SequenceSamples

REPORT_NAME = "report.json"
TRACE_NAME = "trace.csv"

PayloadT = TypeVar("PayloadT", bound=BaseModel)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_payload(path: Path, model: type[PayloadT], what: str) -> PayloadT:
    try:
        return model.model_validate_json(Path(path).read_text())
    except OSError as exc:
        raise InvalidInputError(f"cannot read {what} file {path}: {exc}") from exc
    except ValidationError as exc:
        raise InvalidInputError(f"{what} file {path} is malformed: {exc}") from exc


def render_report(result: dict, *, timestamp: str | None = None) -> str:
    """JSON text of a report; only ``meta.generated_at`` varies between identical runs."""
    document = {
        "meta": {"generated_at": timestamp or datetime.now(timezone.utc).isoformat()},
        "result": result,
    }
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_outputs(out_dir: Path, result: dict, trace: pd.DataFrame | None, artifacts: dict[str, BaseModel] | None = None) -> dict[str, Path]:
    """Write report.json, trace.csv and one ``<name>.json`` per artifact payload."""
    out_dir = Path(out_dir)
    paths = {"report": out_dir / REPORT_NAME}
    _atomic_write(paths["report"], render_report(result))
    if trace is not None:
        paths["trace"] = out_dir / TRACE_NAME
        _atomic_write(paths["trace"], trace.to_csv(index=False, float_format="%.17g"))
    for name, payload in (artifacts or {}).items():
        paths[name] = out_dir / f"{name}.json"
        _atomic_write(paths[name], payload.model_dump_json(indent=2))
    return paths


def read_sequence_samples(path: Path) -> SequenceSamples:
    return SequenceSamples.from_payload(_read_payload(path, SequenceSamplesPayload, "samples"))


def write_sequence_samples(path: Path, samples: SequenceSamples) -> None:
    _atomic_write(Path(path), samples.to_payload().model_dump_json(indent=2))


def read_poly_matrix(path: Path) -> FreePolyMatrix:
    return FreePolyMatrix.from_payload(_read_payload(path, FreePolyMatrixPayload, "polynomial matrix"))


def write_poly_matrix(path: Path, delta: FreePolyMatrix) -> None:
    _atomic_write(Path(path), delta.to_payload().model_dump_json(indent=2))


def read_sampled_function(path: Path) -> GradedFunction:
    """Sampled function exchange format; the result is defined on its sample points only."""
    payload = _read_payload(path, SampledFunctionPayload, "sampled function")
    if not payload.samples:
        raise InvalidInputError(f"sampled function file {path} holds no samples")
    return GradedFunction.from_payload(payload, descriptor=Path(path).stem)
