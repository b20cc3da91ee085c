from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from src.data.models import ComplexMatrixPayload, MatrixTuplePayload
from src.errors import InvalidInputError, PreconditionError
from src.linalg import as_complex_matrix, block_diag, condition_number

MAX_SIMILARITY_CONDITION = 1e12


@dataclass(frozen=True, eq=False)
class MatrixTuple:
    """A point of the nc universe: d square matrices of a common size n (the grading)."""

    matrices: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.matrices) == 0:
            raise InvalidInputError("a matrix tuple needs at least one matrix")
        mats = []
        n = None
        for i, m in enumerate(self.matrices):
            arr = as_complex_matrix(m, name=f"matrix {i + 1}").copy()
            if arr.shape[0] != arr.shape[1]:
                raise InvalidInputError(f"matrix {i + 1} is not square: {arr.shape}")
            if n is None:
                n = arr.shape[0]
            elif arr.shape[0] != n:
                raise InvalidInputError(f"matrix {i + 1} has size {arr.shape[0]}, expected {n}")
            arr.setflags(write=False)
            mats.append(arr)
        object.__setattr__(self, "matrices", tuple(mats))

    @classmethod
    def of(cls, *matrices) -> "MatrixTuple":
        return cls(tuple(matrices))

    @classmethod
    def scalars(cls, *values: complex) -> "MatrixTuple":
        """Grading-1 point from d scalars."""
        return cls(tuple(np.array([[v]], dtype=np.complex128) for v in values))

    @property
    def d(self) -> int:
        return len(self.matrices)

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def key(self) -> tuple:
        return (self.n,) + tuple(m.tobytes() for m in self.matrices)

    def __getitem__(self, j: int) -> np.ndarray:
        return self.matrices[j]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.matrices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixTuple):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def to_payload(self) -> MatrixTuplePayload:
        return MatrixTuplePayload(d=self.d, n=self.n, matrices=[ComplexMatrixPayload.from_array(m) for m in self.matrices])

    @classmethod
    def from_payload(cls, payload: MatrixTuplePayload) -> "MatrixTuple":
        return cls(tuple(m.to_array() for m in payload.matrices))


def direct_sum(lam: MatrixTuple, mu: MatrixTuple) -> MatrixTuple:
    """Coordinate-wise block-diagonal sum; grading n + m."""
    if lam.d != mu.d:
        raise InvalidInputError(f"cannot add tuples with d={lam.d} and d={mu.d}")
    return MatrixTuple(tuple(block_diag(a, b) for a, b in zip(lam, mu)))


def conjugate(lam: MatrixTuple, S) -> MatrixTuple:
    """Similarity action (S lam_1 S^-1, ..., S lam_d S^-1)."""
    S = as_complex_matrix(S, name="S")
    if S.shape != (lam.n, lam.n):
        raise InvalidInputError(f"similarity of shape {S.shape} for a grading-{lam.n} point")
    cond = condition_number(S)
    if cond > MAX_SIMILARITY_CONDITION:
        raise PreconditionError(f"similarity is numerically singular (condition {cond:.3e})")
    S_inv = np.linalg.inv(S)
    return MatrixTuple(tuple(S @ m @ S_inv for m in lam))


class SampleRole(str, Enum):
    DENSE_GRID = "dense-grid"
    UNIQUENESS_SET = "uniqueness-set"
    EXHAUSTION_LEVEL = "exhaustion-level"


@dataclass(frozen=True)
class SampleSet:
    """Ordered finite list of points sharing d; gradings may differ."""

    points: tuple[MatrixTuple, ...]
    role: SampleRole = SampleRole.DENSE_GRID
    duplicates: tuple[int, ...] = field(default=(), init=False)

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "role", SampleRole(self.role))
        if pts:
            d = pts[0].d
            for p in pts:
                if p.d != d:
                    raise InvalidInputError(f"sample set mixes d={d} and d={p.d}")
        seen: set = set()
        dups = []
        for i, p in enumerate(pts):
            if p.key in seen:
                dups.append(i)
            seen.add(p.key)
        object.__setattr__(self, "duplicates", tuple(dups))

    @classmethod
    def of(cls, points: Sequence[MatrixTuple], role: SampleRole | str = SampleRole.DENSE_GRID) -> "SampleSet":
        return cls(tuple(points), SampleRole(role))

    @property
    def d(self) -> int | None:
        return self.points[0].d if self.points else None

    @property
    def gradings(self) -> list[int]:
        return [p.n for p in self.points]

    def index_of(self, point: MatrixTuple) -> int:
        for i, p in enumerate(self.points):
            if p.key == point.key:
                return i
        raise InvalidInputError("point is not a member of the sample set")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[MatrixTuple]:
        return iter(self.points)

    def __getitem__(self, i: int) -> MatrixTuple:
        return self.points[i]

    def to_payload(self) -> list[MatrixTuplePayload]:
        return [p.to_payload() for p in self.points]

    @classmethod
    def from_payload(cls, payload: Sequence[MatrixTuplePayload], role: SampleRole | str = SampleRole.DENSE_GRID) -> "SampleSet":
        return cls(tuple(MatrixTuple.from_payload(p) for p in payload), SampleRole(role))
