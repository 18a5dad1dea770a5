"""Sample-based approximate r-robustness tester.

Pipeline per partition of the sample: ``restrict`` assigns every unsampled
vertex from its sampled in-neighbor counts, ``move_pass`` performs one
correction pass, and ``test_reach`` checks whether both A' and B' stay below
``r + delta_cap`` outside in-neighbors. A partition passing that check is a
deterministic refutation of ``(r + delta_cap)``-robustness.

All thresholds are compared in integers:

* restrict: ``count/t > p + eps/4``      <=> ``4*n*count > (4r + D)*t``
* move:     ``count > p*n + 3*eps*n/4``  <=> ``4*count > 4r + 3D``
* reach:    ``count >= p*n + eps*n``     <=> ``count >= r + D``

with ``p = r/n``, ``eps = D/n`` and ``D = delta_cap``.

Partitions are evaluated in batches: label arrays of shape ``(k, n)`` and one
in-adjacency product per block.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .graph import Digraph, exam_degree, reach_index
from .partition import A, B, C, TriPartition
from .sampling import (
    SamplePartition,
    SampleSet,
    as_fraction,
    exhaustive_label_batches,
    make_rng,
    random_label_batch,
    sample_size,
    sample_vertices,
    sample_weights,
    valid_partition_count,
)

MODES = ("random", "exhaustive")
PRACTICAL_T = 9
PRACTICAL_TRIALS = 3
# Random labelings are drawn in blocks of this size; it is part of the
# reproducibility key together with the seed.
RANDOM_BLOCK = 1024
EXHAUSTIVE_BLOCK = 4096
EXHAUSTIVE_WARN_SUPPORT = 13


class AssumptionError(ValueError):
    """Minimum in-degree does not exceed ``2r + delta_cap``."""

    def __init__(self, vertex: int, d_min: int, bound: int):
        self.vertex, self.d_min, self.bound = vertex, d_min, bound
        super().__init__(
            f"minimum in-degree {d_min} (vertex {vertex}) is not greater than "
            f"2r+delta_cap={bound}; use test_arbitrary for graphs without this bound")


@dataclass(frozen=True)
class TestConfig:
    """Parameters of one tester invocation.

    ``t`` defaults to the practical sample size 9; ``with_guaranteed_t`` swaps
    in the size that carries the probabilistic guarantee. ``trials`` and
    ``partitions_per_trial`` apply to random mode only; a budget of None means
    as many random partitions as there are valid partitions of the support.
    """

    __test__ = False

    r: int
    delta_cap: int
    fail_prob: Fraction = Fraction(1, 3)
    t: int = PRACTICAL_T
    mode: str = "random"
    trials: int = PRACTICAL_TRIALS
    seed: int = 0
    partitions_per_trial: Optional[int] = None
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "fail_prob", as_fraction(self.fail_prob))
        if self.r <= 0:
            raise ValueError("r must be positive")
        if self.delta_cap < 0:
            raise ValueError("delta_cap must be non-negative")
        if not 0 < self.fail_prob < 1:
            raise ValueError("fail_prob must lie in (0, 1)")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.trials < 1 or self.workers < 1:
            raise ValueError("trials and workers must be positive")
        if self.partitions_per_trial is not None and self.partitions_per_trial < 1:
            raise ValueError("partitions_per_trial must be positive")

    def p(self, n: int) -> Fraction:
        return Fraction(self.r, n)

    def eps(self, n: int) -> Fraction:
        return Fraction(self.delta_cap, n)

    def with_guaranteed_t(self, n: int) -> "TestConfig":
        t = sample_size(self.delta_cap, n, self.fail_prob)
        if self.mode == "exhaustive" and t > EXHAUSTIVE_WARN_SUPPORT:
            warnings.warn(
                f"guaranteed sample size t={t} means up to 3^{t} partitions "
                "in exhaustive mode; this is not feasible to run", stacklevel=2)
        return replace(self, t=t)


@dataclass(frozen=True)
class TestOutcome:
    """Verdict plus, on reject, a witness partition.

    ``witness_R`` is the smallest R for which neither witness side is
    R-reachable. ``best_R`` is the same quantity minimised over every
    partition examined (reported even when the verdict is accept).
    """

    __test__ = False

    verdict: str
    witness: Optional[TriPartition] = None
    witness_R: Optional[int] = None
    partitions_examined: int = 0
    trial_of_rejection: Optional[int] = None
    run_of_rejection: Optional[int] = None
    best_R: Optional[int] = None
    degree_witness: bool = False
    runs: int = 1

    @property
    def rejected(self) -> bool:
        return self.verdict == "reject"

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"


# ---------------------------------------------------------------- kernels

def restrict_exceeds(count, n: int, t: int, r: int, delta_cap: int):
    """``count / t > p + eps/4`` with ``p = r/n``, ``eps = delta_cap/n``."""
    return 4 * n * np.asarray(count, dtype=np.int64) > (4 * r + delta_cap) * t


def move_exceeds(count, r: int, delta_cap: int):
    """``count > p*n + 3*eps*n/4``."""
    return 4 * np.asarray(count, dtype=np.int64) > 4 * r + 3 * delta_cap


def reach_meets(count, r: int, delta_cap: int):
    """``count >= p*n + eps*n``."""
    return np.asarray(count, dtype=np.int64) >= r + delta_cap


def _block_counts(g: Digraph, member: np.ndarray) -> np.ndarray:
    """``out[k, v] = |N_in(v) ∩ {u : member[k, u]}|`` as int64."""
    prod = g.in_matrix() @ member.T.astype(np.float64)
    return np.asarray(prod).T.astype(np.int64)


def _restrict_batch(g: Digraph, sample: SampleSet, weights: np.ndarray,
                    sup_labels: np.ndarray, cfg: TestConfig) -> np.ndarray:
    n, t = g.n, sample.t
    count_ac = ((sup_labels != B).astype(np.float64) @ weights.T).astype(np.int64)
    count_bc = ((sup_labels != A).astype(np.float64) @ weights.T).astype(np.int64)
    high_ac = restrict_exceeds(count_ac, n, t, cfg.r, cfg.delta_cap)
    high_bc = restrict_exceeds(count_bc, n, t, cfg.r, cfg.delta_cap)
    # the "assign arbitrarily" branch goes to C
    labels = np.where(high_ac & high_bc, C,
                      np.where(high_ac, A, np.where(high_bc, B, C))).astype(np.int8)
    labels[:, sample.support] = sup_labels
    return labels


def _move_batch(g: Digraph, labels: np.ndarray, movable: np.ndarray,
                cfg: TestConfig, practical: bool) -> np.ndarray:
    deg = g.in_degrees()
    in_a, in_b = labels == A, labels == B
    out_a = deg - _block_counts(g, in_a)   # |N(v) ∩ (B' ∪ C')|
    out_b = deg - _block_counts(g, in_b)   # |N(v) ∩ (A' ∪ C')|
    big_a = move_exceeds(out_a, cfg.r, cfg.delta_cap)
    big_b = move_exceeds(out_b, cfg.r, cfg.delta_cap)
    leave_a = in_a & big_a & movable
    leave_b = in_b & big_b & movable
    dest_a = np.where(big_b, C, B).astype(np.int8)
    dest_b = np.where(big_a, C, A).astype(np.int8)
    new = labels.copy()
    new[leave_a] = dest_a[leave_a]
    new[leave_b] = dest_b[leave_b]
    if practical:
        size_a, size_b = in_a.sum(axis=1), in_b.sum(axis=1)
        risky = (leave_a.sum(axis=1) >= size_a) | (leave_b.sum(axis=1) >= size_b)
        if risky.any():
            k = np.flatnonzero(risky)
            new[k] = _guarded_moves(labels[k], leave_a[k] | leave_b[k], dest_a[k],
                                    dest_b[k], size_a[k], size_b[k])
    return new


def _guarded_moves(rows, leaving, dest_a, dest_b, size_a, size_b) -> np.ndarray:
    # sequential in vertex order; a move that would empty A'' or B'' is skipped.
    # The scan runs over vertex columns and is vectorized across rows.
    out = rows.copy()
    size_a, size_b = size_a.copy(), size_b.copy()
    for v in np.flatnonzero(leaving.any(axis=0)):
        from_a = leaving[:, v] & (rows[:, v] == A) & (size_a > 1)
        from_b = leaving[:, v] & (rows[:, v] == B) & (size_b > 1)
        out[from_a, v] = dest_a[from_a, v]
        out[from_b, v] = dest_b[from_b, v]
        size_a += (from_b & (dest_b[:, v] == A)).astype(np.int64) - from_a
        size_b += (from_a & (dest_a[:, v] == B)).astype(np.int64) - from_b
    return out


def _reach_scores(g: Digraph, labels: np.ndarray) -> np.ndarray:
    """``max(reach_index(A'), reach_index(B'))`` per row; -1 if a side is empty."""
    deg = g.in_degrees()
    in_a, in_b = labels == A, labels == B
    reach_a = np.where(in_a, deg - _block_counts(g, in_a), -1).max(axis=1)
    reach_b = np.where(in_b, deg - _block_counts(g, in_b), -1).max(axis=1)
    both = in_a.any(axis=1) & in_b.any(axis=1)
    return np.where(both, np.maximum(reach_a, reach_b), -1)


def _evaluate(g: Digraph, sample: SampleSet, weights: np.ndarray,
              sup_labels: np.ndarray, cfg: TestConfig, practical: bool):
    """Run the three stages on a batch; returns (final labels, scores)."""
    labels = _restrict_batch(g, sample, weights, sup_labels, cfg)
    movable = np.ones(g.n, dtype=bool)
    if not practical:
        movable[sample.support] = False
    labels = _move_batch(g, labels, movable, cfg, practical)
    return labels, _reach_scores(g, labels)


# ------------------------------------------------------ single partitions

def restrict(g: Digraph, sample: SampleSet, part: SamplePartition,
             cfg: TestConfig) -> TriPartition:
    """Extend a partition of the sample to all vertices."""
    labels = np.asarray(part.labels, dtype=np.int8)[None, :]
    if not ((labels == A).any() and (labels == B).any()):
        raise ValueError("U_A and U_B must be nonempty")
    out = _restrict_batch(g, sample, sample_weights(g, sample), labels, cfg)
    return TriPartition.from_labels(out[0])


def move_pass(g: Digraph, part: TriPartition, sample: SampleSet, cfg: TestConfig,
              practical: bool = False) -> TriPartition:
    """One correction pass with membership read from the input partition.

    ``practical=False`` leaves sampled vertices in place; ``practical=True``
    visits every vertex and skips moves that would empty A or B.
    """
    labels = part.labels(g.n)[None, :]
    movable = np.ones(g.n, dtype=bool)
    if not practical:
        movable[sample.support] = False
    return TriPartition.from_labels(_move_batch(g, labels, movable, cfg, practical)[0])


def test_reach(g: Digraph, part: TriPartition, cfg: TestConfig) -> bool:
    """True (result 1) iff A' or B' is ``(r + delta_cap)``-reachable.

    A partition with an empty side counts as no refutation.
    """
    if not part.a or not part.b:
        return True
    score = _reach_scores(g, part.labels(g.n)[None, :])[0]
    return bool(reach_meets(score, cfg.r, cfg.delta_cap))


test_reach.__test__ = False


def witness_R(g: Digraph, part: TriPartition) -> int:
    """Smallest R such that neither ``part.a`` nor ``part.b`` is R-reachable."""
    return 1 + max(reach_index(g, part.a), reach_index(g, part.b))


# ----------------------------------------------------------------- driver

def _check_assumption(g: Digraph, cfg: TestConfig) -> None:
    v = exam_degree(g, cfg.r, cfg.delta_cap)
    if v is not None:
        raise AssumptionError(v, int(g.in_degrees()[v]), 2 * cfg.r + cfg.delta_cap)


def _trial_batches(g: Digraph, cfg: TestConfig, run: int
                   ) -> Iterator[tuple[int, SampleSet, Iterator[np.ndarray]]]:
    if cfg.mode == "exhaustive":
        rng = make_rng(cfg.seed, run, 0)
        sample = sample_vertices(g.n, cfg.t, rng)
        yield 0, sample, exhaustive_label_batches(sample.size, EXHAUSTIVE_BLOCK)
        return
    for trial in range(cfg.trials):
        rng = make_rng(cfg.seed, run, trial)
        sample = sample_vertices(g.n, cfg.t, rng)
        if sample.size < 2:
            yield trial, sample, iter(())
            continue
        budget = cfg.partitions_per_trial or valid_partition_count(sample.size)
        yield trial, sample, _random_batches(sample.size, budget, rng)


def _random_batches(s: int, budget: int, rng) -> Iterator[np.ndarray]:
    done = 0
    while done < budget:
        k = min(RANDOM_BLOCK, budget - done)
        yield random_label_batch(s, k, rng)
        done += k


def _rounds(batches: Iterator[np.ndarray], size: int):
    chunk = []
    for b in batches:
        chunk.append(b)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def sampled_rbst_tst(g: Digraph, cfg: TestConfig, run: int = 0,
                     check_assumption: bool = True) -> TestOutcome:
    """One run of the sample-based tester.

    Random mode draws a fresh sample per trial and evaluates random partitions
    of it with the practical move pass; exhaustive mode draws one sample and
    walks all of its partitions with the plain move pass. The first partition
    whose A' and B' are both below ``r + delta_cap`` reachability ends the run
    with a reject. The outcome depends only on ``(g, cfg, run)``; ``workers``
    changes wall-clock time, not results.

    ``check_assumption=False`` skips the minimum in-degree precondition. A
    reject witness is still a valid refutation; only the rejection guarantee
    is lost.
    """
    if cfg.delta_cap > g.n:
        raise ValueError("delta_cap must not exceed n")
    if cfg.t < 2:
        raise ValueError("sample size t must be at least 2")
    if check_assumption:
        _check_assumption(g, cfg)
    practical = cfg.mode == "random"
    examined = 0
    best = None
    pool = ThreadPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        for trial, sample, batches in _trial_batches(g, cfg, run):
            weights = sample_weights(g, sample)

            def job(sup_labels):
                return _evaluate(g, sample, weights, sup_labels, cfg, practical)

            for chunk in _rounds(batches, cfg.workers):
                results = list(pool.map(job, chunk)) if pool else [job(c) for c in chunk]
                for (labels, scores) in results:
                    hits = np.flatnonzero((scores >= 0) & ~reach_meets(scores, cfg.r, cfg.delta_cap))
                    seen = scores[: hits[0] + 1] if hits.size else scores
                    seen = seen[seen >= 0]
                    if seen.size:
                        low = int(seen.min())
                        best = low if best is None else min(best, low)
                    if hits.size:
                        i = int(hits[0])
                        wit = TriPartition.from_labels(labels[i])
                        return TestOutcome("reject", wit, int(scores[i]) + 1,
                                           examined + i + 1, trial, run, best + 1)
                    examined += len(scores)
    finally:
        if pool:
            pool.shutdown()
    return TestOutcome("accept", partitions_examined=examined,
                       best_R=None if best is None else best + 1)


def amplification_repeats(sigma) -> int:
    """``ceil(ln(1/sigma) / ln 3)``, computed exactly as the least k with
    ``3**k >= 1/sigma``."""
    sigma = as_fraction(sigma)
    if not 0 < sigma < 1:
        raise ValueError("sigma must lie in (0, 1)")
    k = 0
    while Fraction(3) ** k < 1 / sigma:
        k += 1
    return k


def amplified_test(g: Digraph, cfg: TestConfig, sigma) -> TestOutcome:
    """Repeat the tester until one run rejects or the repeat budget for overall
    failure probability ``sigma`` (1/3 per run) is spent."""
    repeats = amplification_repeats(sigma)
    examined = 0
    best = None
    for run in range(repeats):
        out = sampled_rbst_tst(g, cfg, run=run)
        examined += out.partitions_examined
        if out.best_R is not None:
            best = out.best_R if best is None else min(best, out.best_R)
        if out.rejected:
            return replace(out, partitions_examined=examined, best_R=best, runs=run + 1)
    return TestOutcome("accept", partitions_examined=examined, best_R=best, runs=repeats)


def degree_witness(g: Digraph, v: int) -> TriPartition:
    return TriPartition(frozenset([v]), frozenset(range(g.n)) - {v}, frozenset())


def test_arbitrary(g: Digraph, cfg: TestConfig, sigma=None) -> TestOutcome:
    """Tester for graphs without a minimum in-degree guarantee.

    A vertex of in-degree at most ``2r + delta_cap`` gives an immediate reject
    with witness ``({v}, V - {v})``, which refutes
    ``(2r + delta_cap + 1)``-robustness. Otherwise the sampler decides (with
    amplification when ``sigma`` is given).
    """
    v = exam_degree(g, cfg.r, cfg.delta_cap)
    if v is not None:
        wit = degree_witness(g, v)
        return TestOutcome("reject", wit, witness_R(g, wit), degree_witness=True,
                           best_R=witness_R(g, wit))
    if sigma is None:
        return sampled_rbst_tst(g, cfg)
    return amplified_test(g, cfg, sigma)


test_arbitrary.__test__ = False
