"""Counter-based random streams.

A :class:`SeededGenerator` reads raw 64-bit words from numpy's Philox4x64-10
keyed by ``seed + 2**64 * stream``.  Bounded integers come from plain
rejection sampling on those words, so the output sequence is fixed by
``(seed, stream)`` alone and does not depend on numpy's distribution code.
"""

from __future__ import annotations

from typing import MutableSequence, Sequence, TypeVar

import numpy as np

T = TypeVar("T")

_TWO64 = 1 << 64


class SeededGenerator:
    def __init__(self, seed: int, stream: int = 0, buffer: int = 4096):
        if not (0 <= seed < _TWO64 and 0 <= stream < _TWO64):
            raise ValueError("seed and stream must be unsigned 64-bit integers")
        self.seed = seed
        self.stream = stream
        self._bits = np.random.Philox(key=seed + (stream << 64))
        self._buffer = buffer
        self._words: list[int] = []
        self._pos = 0

    def next_u64(self) -> int:
        if self._pos == len(self._words):
            self._words = self._bits.random_raw(self._buffer).tolist()
            self._pos = 0
        w = self._words[self._pos]
        self._pos += 1
        return w

    def randbelow(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = _TWO64 - _TWO64 % k
        while True:
            w = self.next_u64()
            if w < limit:
                return w % k

    def shuffle(self, items: MutableSequence[T]) -> None:
        """Fisher-Yates in place."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, items: Sequence[T]) -> list[T]:
        out = list(items)
        self.shuffle(out)
        return out
