from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from src.errors import NcMontelError
from src.linalg import as_complex_matrix, block_diag, operator_norm
from src.ncpoints import MatrixTuple, conjugate, direct_sum

from .functions import GradedFunction, evaluate


@dataclass(frozen=True)
class NcCase:
    kind: str  # "direct-sum" or "similarity"
    index: int
    gradings: tuple[int, ...]
    residual: float | None
    error: str | None = None


@dataclass
class NcCheckReport:
    tol: float
    max_direct_sum_residual: float = 0.0
    max_similarity_residual: float = 0.0
    cases: list[NcCase] = field(default_factory=list)

    @property
    def errors(self) -> list[NcCase]:
        return [c for c in self.cases if c.error is not None]

    @property
    def passed(self) -> bool:
        return self.max_direct_sum_residual <= self.tol and self.max_similarity_residual <= self.tol

    def to_dict(self) -> dict:
        return {
            "tol": self.tol,
            "max_direct_sum_residual": self.max_direct_sum_residual,
            "max_similarity_residual": self.max_similarity_residual,
            "cases": len(self.cases),
            "case_errors": [{"kind": c.kind, "index": c.index, "error": c.error} for c in self.errors],
            "passed": self.passed,
        }


def direct_sum_residual(u: GradedFunction, lam: MatrixTuple, mu: MatrixTuple) -> float:
    """||u(lam + mu) - (u(lam) + u(mu))|| with the block-diagonal identification."""
    joined = evaluate(u, direct_sum(lam, mu))
    return operator_norm(joined - block_diag(evaluate(u, lam), evaluate(u, mu)))


def similarity_residual(u: GradedFunction, lam: MatrixTuple, S) -> float:
    """||u(S lam S^-1) - (S (x) id_H) u(lam) S^-1||."""
    S = as_complex_matrix(S, name="S")
    moved = evaluate(u, conjugate(lam, S))
    expected = np.kron(S, np.eye(u.M, dtype=np.complex128)) @ evaluate(u, lam) @ np.linalg.inv(S)
    return operator_norm(moved - expected)


def check_nc_axioms(
    u: GradedFunction,
    pairs: Sequence[tuple[MatrixTuple, MatrixTuple]],
    sims: Sequence[tuple[MatrixTuple, object]],
    tol: float = 1e-9,
) -> NcCheckReport:
    """Sample the direct-sum and similarity laws of ``u``.

    A case whose inputs cannot be evaluated (singular S, mismatched shapes)
    is recorded with its error and does not count toward the maxima.
    """
    report = NcCheckReport(tol=tol)
    for i, (lam, mu) in enumerate(pairs):
        try:
            r = direct_sum_residual(u, lam, mu)
        except NcMontelError as exc:
            report.cases.append(NcCase("direct-sum", i, (lam.n, mu.n), None, str(exc)))
            continue
        report.cases.append(NcCase("direct-sum", i, (lam.n, mu.n), r))
        report.max_direct_sum_residual = max(report.max_direct_sum_residual, r)

    for i, (lam, S) in enumerate(sims):
        try:
            r = similarity_residual(u, lam, S)
        except (NcMontelError, np.linalg.LinAlgError) as exc:
            report.cases.append(NcCase("similarity", i, (lam.n,), None, str(exc)))
            continue
        report.cases.append(NcCase("similarity", i, (lam.n,), r))
        report.max_similarity_residual = max(report.max_similarity_residual, r)
    return report
