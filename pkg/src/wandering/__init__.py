"""Wandering unitaries, Cauchy-subsequence extraction and their reports."""

from .engine import DEFAULT_EPS_SCALE, WanderingEngine, run
from .output import TRACE_COLUMNS, WanderingOutputBuilder
from .subsequence import diameter, extract_cauchy_subsequence, is_converged, min_pairwise_distance
from .transport import HoldoutReport, LimitBoundReport, holdout_report, limit_bound_check, limit_function, transport_functions
from .types import Residuals, SequenceSamples, TraceRow, WanderingResult
from .unitary import (
    block_offsets,
    build_unitary,
    coefficient_vectors,
    containment_violation,
    reassemble,
    required_truncation,
    transform,
)

__all__ = [
    # Types
    "Residuals",
    "SequenceSamples",
    "TraceRow",
    "WanderingResult",
    # Construction
    "block_offsets",
    "build_unitary",
    "coefficient_vectors",
    "containment_violation",
    "reassemble",
    "required_truncation",
    "transform",
    # Extraction
    "DEFAULT_EPS_SCALE",
    "WanderingEngine",
    "diameter",
    "extract_cauchy_subsequence",
    "is_converged",
    "min_pairwise_distance",
    "run",
    # Transport and reporting
    "HoldoutReport",
    "LimitBoundReport",
    "TRACE_COLUMNS",
    "WanderingOutputBuilder",
    "holdout_report",
    "limit_bound_check",
    "limit_function",
    "transport_functions",
]
