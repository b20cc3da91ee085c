from __future__ import annotations

import numpy as np
from pydantic import BaseModel, model_validator


class ComplexMatrixPayload(BaseModel):
    rows: int
    cols: int
    re: list[float]
    im: list[float]

    @model_validator(mode="after")
    def _check_counts(self) -> "ComplexMatrixPayload":
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("rows and cols must be positive")
        expected = self.rows * self.cols
        if len(self.re) != expected or len(self.im) != expected:
            raise ValueError(f"expected {expected} entries, got re={len(self.re)} im={len(self.im)}")
        if not (np.all(np.isfinite(self.re)) and np.all(np.isfinite(self.im))):
            raise ValueError("entries must be finite")
        return self

    @classmethod
    def from_array(cls, A: np.ndarray) -> "ComplexMatrixPayload":
        A = np.asarray(A, dtype=np.complex128)
        flat = A.reshape(-1)
        return cls(rows=A.shape[0], cols=A.shape[1], re=flat.real.tolist(), im=flat.imag.tolist())

    def to_array(self) -> np.ndarray:
        flat = np.asarray(self.re, dtype=float) + 1j * np.asarray(self.im, dtype=float)
        return flat.reshape(self.rows, self.cols)


class MatrixTuplePayload(BaseModel):
    d: int
    n: int
    matrices: list[ComplexMatrixPayload]

    @model_validator(mode="after")
    def _check_shapes(self) -> "MatrixTuplePayload":
        if len(self.matrices) != self.d:
            raise ValueError(f"expected {self.d} matrices, got {len(self.matrices)}")
        for m in self.matrices:
            if m.rows != self.n or m.cols != self.n:
                raise ValueError(f"matrix of shape {m.rows}x{m.cols} in a grading-{self.n} tuple")
        return self


class TermPayload(BaseModel):
    word: list[int]
    re: float
    im: float = 0.0


class FreePolyMatrixPayload(BaseModel):
    d: int
    J: int
    L: int
    entries: list[list[list[TermPayload]]]

    @model_validator(mode="after")
    def _check_grid(self) -> "FreePolyMatrixPayload":
        if len(self.entries) != self.J or any(len(row) != self.L for row in self.entries):
            raise ValueError(f"entries must form a {self.J}x{self.L} grid")
        return self


class SamplePayload(BaseModel):
    point: MatrixTuplePayload
    value: ComplexMatrixPayload


class SampledFunctionPayload(BaseModel):
    M: int
    d: int
    samples: list[SamplePayload]


class SequenceSamplesPayload(BaseModel):
    """Sequence of sampled functions: values[k][i] is u^k at points[i]."""

    M: int
    d: int
    K: int
    B: float
    points: list[MatrixTuplePayload]
    values: list[list[ComplexMatrixPayload]]

    @model_validator(mode="after")
    def _check_table(self) -> "SequenceSamplesPayload":
        if len(self.values) != self.K:
            raise ValueError(f"expected {self.K} rows of values, got {len(self.values)}")
        if any(len(row) != len(self.points) for row in self.values):
            raise ValueError("every row of values must have one entry per point")
        return self
