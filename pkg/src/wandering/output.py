from __future__ import annotations

from typing import List

import pandas as pd

from src.data.models import ComplexMatrixPayload
from src.linalg import operator_norm

from .types import TraceRow, WanderingResult

TRACE_COLUMNS = ["point_index", "k", "residual_to_limit"]


class WanderingOutputBuilder:
    """Builds the JSON-ready report and the CSV trace of a wandering run.

    Stateless: callers pass a result and get plain data back.
    """

    def build_trace_rows(self, result: WanderingResult) -> List[TraceRow]:
        rows: List[TraceRow] = []
        for i, limit in enumerate(result.limits):
            for k in result.subsequence:
                rows.append({"point_index": i, "k": k, "residual_to_limit": operator_norm(result.transformed[k][i] - limit)})
        return rows

    def trace_frame(self, result: WanderingResult) -> pd.DataFrame:
        return pd.DataFrame(self.build_trace_rows(result), columns=TRACE_COLUMNS)

    def build_report(self, result: WanderingResult, *, include_unitaries: bool = True) -> dict:
        report = {
            "steered": result.steered,
            "subsequence": list(result.subsequence),
            "converged": result.converged,
            "epsilon": list(result.epsilon),
            "residuals": dict(result.residuals()),
            "limits": [ComplexMatrixPayload.from_array(L).model_dump() for L in result.limits],
            "note": "convergence is certified on the sampled members only",
        }
        if include_unitaries:
            report["unitaries"] = [ComplexMatrixPayload.from_array(U).model_dump() for U in result.unitaries]
        return report
