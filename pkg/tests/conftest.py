import numpy as np
import pytest

from src.experiments.generators import random_tuple
from src.ncpoints import MatrixTuple


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def point_factory(rng):
    def _make(d: int, n: int, norm: float = 0.5) -> MatrixTuple:
        return random_tuple(rng, d, n, norm)

    return _make
