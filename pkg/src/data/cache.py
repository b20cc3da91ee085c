from __future__ import annotations

from typing import Hashable, Iterable

import numpy as np


class WordProductCache:
    """Prefix products of words evaluated at one matrix tuple.

    The product for a word is built from the product of its longest proper
    prefix, so evaluating many words sharing prefixes costs one matrix
    multiplication per new word.
    """

    def __init__(self, matrices: tuple[np.ndarray, ...], n: int) -> None:
        self._matrices = matrices
        self._products: dict[tuple[int, ...], np.ndarray] = {(): np.eye(n, dtype=np.complex128)}

    def get(self, word: tuple[int, ...]) -> np.ndarray:
        cached = self._products.get(word)
        if cached is not None:
            return cached
        product = self.get(word[:-1]) @ self._matrices[word[-1] - 1]
        self._products[word] = product
        return product

    def __len__(self) -> int:
        return len(self._products)


class SampleTable:
    """Stored (point key -> value) table; written only by tabulation or sampling."""

    def __init__(self) -> None:
        self._values: dict[Hashable, np.ndarray] = {}

    def _merge_data(self, new_data: Iterable[tuple[Hashable, np.ndarray]]) -> None:
        """Add entries, keeping the first value stored for a repeated key."""
        for key, value in new_data:
            if key not in self._values:
                self._values[key] = value

    def get(self, key: Hashable) -> np.ndarray | None:
        return self._values.get(key)

    def update(self, items: Iterable[tuple[Hashable, np.ndarray]]) -> None:
        self._merge_data(items)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._values

    def __len__(self) -> int:
        return len(self._values)
