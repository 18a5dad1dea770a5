"""Graphs with known robustness: the planted three-clique construction and
uniform random digraphs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Digraph
from .partition import TriPartition
from .sampling import as_fraction, make_rng


@dataclass(frozen=True)
class PlantedSpec:
    """Sizes of the hidden blocks and the number ``rbar`` of random cross
    in-neighbors given to every vertex of A and B."""

    n: int
    size_a: int
    size_b: int
    rbar: int
    seed: int = 0

    @property
    def size_c(self) -> int:
        return self.n - self.size_a - self.size_b

    def validate(self) -> None:
        if self.rbar < 1:
            raise ValueError("rbar must be at least 1")
        if self.size_a < 0 or self.size_b < 0 or self.size_c < 0:
            raise ValueError("block sizes must be non-negative and fit in n")
        if min(self.size_a, self.size_b, self.size_c) < 2 * self.rbar:
            raise ValueError(
                f"every block needs at least 2*rbar={2 * self.rbar} vertices "
                f"(got |A|={self.size_a}, |B|={self.size_b}, |C|={self.size_c})")


def _clique(ids: np.ndarray) -> np.ndarray:
    src, dst = np.meshgrid(ids, ids, indexing="ij")
    off = src != dst
    return np.column_stack([src[off], dst[off]])


def generate_planted(spec: PlantedSpec) -> tuple[Digraph, TriPartition]:
    """Planted graph that is ``rbar``-robust but not ``(rbar+1)``-robust.

    Blocks A, B, C are complete digraphs. Each vertex of A receives edges from
    ``rbar`` distinct uniformly chosen vertices of B ∪ C (B symmetrically from
    A ∪ C), and every vertex of C receives edges from all of A ∪ B. Labels are
    then shuffled; the returned partition is in the shuffled labels.
    """
    spec.validate()
    rng = make_rng(spec.seed)
    a = np.arange(spec.size_a)
    b = np.arange(spec.size_a, spec.size_a + spec.size_b)
    c = np.arange(spec.size_a + spec.size_b, spec.n)
    parts = [_clique(a), _clique(b), _clique(c)]
    for targets, pool in ((a, np.concatenate([b, c])), (b, np.concatenate([a, c]))):
        for u in targets:
            picks = rng.choice(pool, size=spec.rbar, replace=False)
            parts.append(np.column_stack([picks, np.full(spec.rbar, u)]))
    ab = np.concatenate([a, b])
    src, dst = np.meshgrid(ab, c, indexing="ij")
    parts.append(np.column_stack([src.ravel(), dst.ravel()]))
    edges = np.concatenate(parts).astype(np.int64)

    perm = rng.permutation(spec.n)
    g = Digraph.from_edges(spec.n, perm[edges])
    truth = TriPartition(frozenset(perm[a].tolist()), frozenset(perm[b].tolist()),
                         frozenset(perm[c].tolist()))
    return g, truth


def write_ground_truth(truth: TriPartition, rbar: int) -> str:
    a, b, _ = truth.sorted_blocks()
    return "\n".join([
        "A: " + " ".join(map(str, a)),
        "B: " + " ".join(map(str, b)),
        f"rbar: {rbar}",
    ])


def parse_ground_truth(text: str, n: int) -> tuple[TriPartition, int]:
    fields = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, _, value = line.partition(":")
        fields[key.strip()] = value.split()
    try:
        a = [int(x) for x in fields["A"]]
        b = [int(x) for x in fields["B"]]
        (rbar,) = (int(x) for x in fields["rbar"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed ground-truth file: {exc}") from None
    part = TriPartition.of(n, a, b)
    part.validate(n)
    return part, rbar


def generate_uniform_digraph(n: int, edge_prob, seed: int = 0) -> Digraph:
    """Each ordered pair ``a != b`` becomes an edge with probability ``edge_prob``."""
    p = float(as_fraction(edge_prob))
    if not 0 <= p <= 1:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = make_rng(seed)
    keep = rng.random((n, n)) < p
    np.fill_diagonal(keep, False)
    src, dst = np.nonzero(keep)
    return Digraph.from_edges(n, np.column_stack([src, dst]))
