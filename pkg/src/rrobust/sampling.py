"""Vertex sampling with replacement and 3-way partitions of the sample.

Random streams are PCG64 generators seeded from ``numpy.random.SeedSequence``
with a spawn key, so ``make_rng(seed, run, trial)`` is reproducible across
platforms and independent across ``(run, trial)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .graph import Digraph
from .partition import A, B


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=tuple(keys))
    return np.random.Generator(np.random.PCG64(seq))


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float literal."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def sample_size(delta_cap: int, n: int, fail_prob) -> int:
    """Sample size meeting both the non-emptiness and the estimation bound.

    ``t = ceil(max(8/eps^2 * ln(32/(eps*delta)), 1/eps * ln(16/delta)))`` with
    ``eps = delta_cap / n``.
    """
    if delta_cap <= 0:
        raise ValueError("delta_cap must be positive (eps = delta_cap/n > 0)")
    if delta_cap > n:
        raise ValueError("delta_cap must not exceed n")
    delta = as_fraction(fail_prob)
    if not 0 < delta < 1:
        raise ValueError("fail_prob must lie in (0, 1)")
    eps = delta_cap / n
    d = float(delta)
    estimate = 8.0 / eps ** 2 * math.log(32.0 / (eps * d))
    nonempty = 1.0 / eps * math.log(16.0 / d)
    return math.ceil(max(estimate, nonempty))


@dataclass(frozen=True, eq=False)
class SampleSet:
    """``t`` draws with replacement; ``support`` is sorted and
    ``multiplicity[j]`` counts the draws of ``support[j]``."""

    draws: np.ndarray
    support: np.ndarray
    multiplicity: np.ndarray

    @classmethod
    def from_draws(cls, draws) -> "SampleSet":
        draws = np.asarray(draws, dtype=np.int64)
        support, mult = np.unique(draws, return_counts=True)
        for arr in (draws, support, mult):
            arr.setflags(write=False)
        return cls(draws, support, mult)

    @property
    def t(self) -> int:
        return int(self.draws.size)

    @property
    def size(self) -> int:
        return int(self.support.size)

    def multiplicity_of(self) -> dict[int, int]:
        return dict(zip(self.support.tolist(), self.multiplicity.tolist()))


@dataclass(frozen=True, eq=False)
class SamplePartition:
    """Block label (``A``/``B``/``C``) per support vertex, aligned with
    ``SampleSet.support``. All copies of a drawn vertex share its block."""

    labels: np.ndarray

    def block(self, sample: SampleSet) -> dict[int, int]:
        return dict(zip(sample.support.tolist(), self.labels.tolist()))


def sample_vertices(n: int, t: int, rng: np.random.Generator) -> SampleSet:
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    return SampleSet.from_draws(rng.integers(0, n, size=t))


def sample_weights(g: Digraph, sample: SampleSet) -> np.ndarray:
    """``W[v, j] = multiplicity[j]`` if ``support[j]`` is an in-neighbor of v."""
    w = np.zeros((g.n, sample.size), dtype=np.float64)
    pos = {u: j for j, u in enumerate(sample.support.tolist())}
    # walk out-edges of support vertices via the in-neighbor lists
    dst = np.repeat(np.arange(g.n), g.in_degrees())
    hit = np.isin(g.indices, sample.support)
    for v, u in zip(dst[hit].tolist(), g.indices[hit].tolist()):
        w[v, pos[u]] = sample.multiplicity[pos[u]]
    return w


def weighted_block_count(g: Digraph, v: int, sample: SampleSet,
                         part: SamplePartition, blocks) -> int:
    """Multiset count of sampled in-neighbors of ``v`` whose block is in ``blocks``."""
    nbrs = g.in_neighbors(v)
    wanted = np.isin(part.labels, list(blocks))
    hit = np.isin(sample.support, nbrs) & wanted
    return int(sample.multiplicity[hit].sum())


def valid_partition_count(s: int) -> int:
    """Assignments of ``s`` items to A/B/C with A and B both nonempty."""
    return 3 ** s - 2 * 2 ** s + 1 if s >= 1 else 0


def exhaustive_label_batches(s: int, batch: int = 4096) -> Iterator[np.ndarray]:
    """All valid labelings of ``s`` support vertices in ascending ternary
    counter order (position ``j`` is digit ``j``), as ``(k, s)`` int8 arrays."""
    pow3 = 3 ** np.arange(s, dtype=np.int64)
    total = 3 ** s
    for start in range(0, total, batch):
        idx = np.arange(start, min(start + batch, total), dtype=np.int64)
        digits = ((idx[:, None] // pow3[None, :]) % 3).astype(np.int8)
        ok = (digits == A).any(axis=1) & (digits == B).any(axis=1)
        if ok.any():
            yield digits[ok]


def enumerate_partitions(sample: SampleSet) -> Iterator[SamplePartition]:
    if sample.size < 1:
        raise ValueError("sample support is empty")
    for labels in exhaustive_label_batches(sample.size):
        for row in labels:
            yield SamplePartition(row)


def random_label_batch(s: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """``k`` independent uniform labelings with A and B nonempty.

    Rows failing the condition are dropped and redrawn, which is the same as
    resampling each one until it passes.
    """
    if s < 2:
        raise ValueError("random partitions need at least two support vertices")
    out = []
    have = 0
    while have < k:
        draw = rng.integers(0, 3, size=(k - have, s), dtype=np.int8)
        ok = (draw == A).any(axis=1) & (draw == B).any(axis=1)
        out.append(draw[ok])
        have += int(ok.sum())
    return np.concatenate(out)[:k]


def random_partition(sample: SampleSet, rng: np.random.Generator) -> SamplePartition:
    return SamplePartition(random_label_batch(sample.size, 1, rng)[0])
