"""Interval estimate of the maximal robustness by a shifted binary search."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Digraph, min_in_degree
from .sampling import as_fraction
from .tester import TestConfig, amplified_test


@dataclass
class IntervalEstimate:
    """Bounds on the maximal robustness ``rbar``.

    ``lo <= rbar`` holds whenever every accept was correct; ``rbar <= hi``
    holds deterministically (``rbar < hi`` once ``hi`` came from a reject).
    """

    lo: int
    hi: int
    iterations: int = 0
    per_call_outcomes: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return self.hi - self.lo

    def contains(self, rbar: int) -> bool:
        return self.lo <= rbar <= self.hi


def interval_estimate(g: Digraph, delta_cap: int, beta_num: int, beta_den: int,
                      sigma, seed: int = 0, *, t: int = 9, trials: int = 3,
                      workers: int = 1) -> IntervalEstimate:
    """Search ``[lo, hi]`` until ``hi - lo < (1 + beta) * delta_cap``.

    Each step tests ``r = floor((lo - delta_cap + hi) / 2)``, raised to at
    least ``lo + 1``, with amplification for failure budget
    ``sigma / ceil(log2 n)``. Accept raises ``lo`` to ``r``; reject lowers
    ``hi`` to ``r + delta_cap``. Both strictly shrink the gap while it exceeds
    ``delta_cap + 1``, which is where the search stops at the latest.

    The upper end starts at ``min(ceil(n/2), d_min)``, both of which bound the
    robustness of any digraph, and ``r`` is capped so that
    ``d_min > 2r + delta_cap``.
    """
    n = g.n
    if n < 2:
        raise ValueError("need at least two vertices")
    if delta_cap < 1:
        raise ValueError("delta_cap must be at least 1")
    beta = Fraction(beta_num, beta_den)
    if beta <= 0:
        raise ValueError("beta must be positive")
    sigma = as_fraction(sigma)
    if not 0 < sigma < 1:
        raise ValueError("sigma must lie in (0, 1)")

    _, d_min = min_in_degree(g)
    lo, hi = 0, min(math.ceil(n / 2), d_min)
    est = IntervalEstimate(lo, hi)
    if d_min < math.ceil(n / 2):
        est.notes.append(f"upper bound starts at d_min={d_min}")
    width = (1 + beta) * delta_cap
    calls = max(1, math.ceil(math.log2(n)))
    per_call = sigma / calls
    r_cap = (d_min - delta_cap - 1) // 2  # largest r keeping d_min > 2r + D
    cap = calls + 2

    while hi - lo >= width:
        if hi - lo <= delta_cap + 1:
            # neither verdict could shrink a gap this small
            est.notes.append(f"stopped at resolution limit delta_cap+1={delta_cap + 1}")
            break
        if est.iterations >= cap:
            est.notes.append(f"stopped at iteration cap {cap}")
            break
        r = (lo - delta_cap + hi) // 2
        if r <= lo:
            est.notes.append(f"midpoint {r} raised to {lo + 1}")
            r = lo + 1
        if r > r_cap:
            if r_cap <= lo:
                est.notes.append(
                    f"stopped: r={r} violates d_min > 2r+{delta_cap} and no smaller "
                    "r can move the bounds")
                break
            est.notes.append(f"r={r} capped to {r_cap} by the in-degree bound")
            r = r_cap
        cfg = TestConfig(r=r, delta_cap=delta_cap, t=t, trials=trials,
                         seed=_call_seed(seed, est.iterations), workers=workers)
        out = amplified_test(g, cfg, per_call)
        est.per_call_outcomes.append((r, out.verdict))
        est.iterations += 1
        if out.accepted:
            lo = r
        else:
            hi = r + delta_cap
        est.lo, est.hi = lo, hi
    return est


def _call_seed(seed: int, iteration: int) -> int:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(iteration,))
    return int(seq.generate_state(1, np.uint64)[0])
