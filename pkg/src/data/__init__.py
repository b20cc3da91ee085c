"""Wire models (JSON exchange formats) and in-memory caches."""

from .cache import SampleTable, WordProductCache
from .models import (
    ComplexMatrixPayload,
    FreePolyMatrixPayload,
    MatrixTuplePayload,
    SampledFunctionPayload,
    SamplePayload,
    SequenceSamplesPayload,
    TermPayload,
)

__all__ = [
    "ComplexMatrixPayload",
    "FreePolyMatrixPayload",
    "MatrixTuplePayload",
    "SampleTable",
    "SampledFunctionPayload",
    "SamplePayload",
    "SequenceSamplesPayload",
    "TermPayload",
    "WordProductCache",
]
