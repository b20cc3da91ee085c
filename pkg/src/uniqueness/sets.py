from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from src.data.cache import WordProductCache
from src.errors import InvalidInputError
from src.freepoly import Word, all_words
from src.linalg import DEFAULT_RANK_TOL
from src.ncpoints import MatrixTuple, SampleSet


@dataclass(frozen=True)
class FunctionClass:
    """Free polynomials in d variables of degree at most D.

    Uniqueness is decided relative to this class only; no finite point set
    decides it for all holomorphic functions.
    """

    d: int
    D: int
    basis: tuple[Word, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.d <= 0 or self.D < 0:
            raise InvalidInputError("need d >= 1 and D >= 0")
        object.__setattr__(self, "basis", tuple(all_words(self.d, self.D)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def describe(self) -> str:
        return f"free polynomials in {self.d} variables of degree <= {self.D} (dim {self.dim})"


def evaluation_matrix(points: Sequence[MatrixTuple], cls: FunctionClass) -> np.ndarray:
    """Column j stacks w_j(lam_i) flattened over every point, w_j the j-th basis word."""
    blocks = []
    for p in points:
        if p.d != cls.d:
            raise InvalidInputError(f"point with d={p.d} for a class in {cls.d} variables")
        cache = WordProductCache(p.matrices, p.n)
        blocks.append(np.column_stack([cache.get(w).reshape(-1) for w in cls.basis]))
    return np.vstack(blocks)


def evaluation_rank(points: Sequence[MatrixTuple], cls: FunctionClass, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    if not points:
        return 0
    s = np.linalg.svd(evaluation_matrix(points, cls), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))


def is_uniqueness_set(points: SampleSet | Sequence[MatrixTuple], cls: FunctionClass, rank_tol: float = DEFAULT_RANK_TOL) -> bool:
    """True iff p -> (p(lam_i))_i is injective on ``cls``."""
    return evaluation_rank(list(points), cls, rank_tol) == cls.dim
