"""Tripartitions of the vertex set and their label-array encoding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Block labels used in every label array.
A, B, C = 0, 1, 2
BLOCK_NAMES = ("A", "B", "C")


@dataclass(frozen=True)
class TriPartition:
    """Disjoint vertex sets ``(a, b, c)`` covering ``0..n-1`` with ``a`` and
    ``b`` nonempty."""

    a: frozenset
    b: frozenset
    c: frozenset

    @classmethod
    def from_labels(cls, labels) -> "TriPartition":
        labels = np.asarray(labels)
        return cls(frozenset(np.flatnonzero(labels == A).tolist()),
                   frozenset(np.flatnonzero(labels == B).tolist()),
                   frozenset(np.flatnonzero(labels == C).tolist()))

    @classmethod
    def of(cls, n: int, a, b) -> "TriPartition":
        a, b = frozenset(a), frozenset(b)
        return cls(a, b, frozenset(range(n)) - a - b)

    def labels(self, n: int) -> np.ndarray:
        self.validate(n)
        out = np.full(n, C, dtype=np.int8)
        out[list(self.a)] = A
        out[list(self.b)] = B
        return out

    def validate(self, n: int) -> None:
        if not self.a or not self.b:
            raise ValueError("blocks A and B must be nonempty")
        if self.a & self.b or self.a & self.c or self.b & self.c:
            raise ValueError("blocks must be pairwise disjoint")
        if (self.a | self.b | self.c) != frozenset(range(n)):
            raise ValueError(f"blocks must cover exactly 0..{n - 1}")

    def sorted_blocks(self) -> tuple[list[int], list[int], list[int]]:
        return sorted(self.a), sorted(self.b), sorted(self.c)
