"""Brute-force robustness by enumerating every ternary vertex assignment.

Each assignment index ``k`` in ``0..3^n - 1`` puts vertex ``i`` in block
``(k // 3**i) % 3`` (0 = A, 1 = B, 2 = C). Assignments with an empty A or B are
skipped, and so is the mirror image of each pair: only assignments whose
lowest-id non-C vertex lies in A are examined. Witnesses are the first
violating assignment in index order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import Digraph
from .partition import A, B, C, TriPartition

DEFAULT_MAX_N = 13
_CHUNK = 3 ** 10


class SizeGuardError(ValueError):
    """Graph too large for exhaustive enumeration."""


def _guard(g: Digraph, max_n: int) -> None:
    if g.n < 2:
        raise ValueError("exact robustness needs at least two vertices")
    if g.n > max_n:
        raise SizeGuardError(
            f"n={g.n} exceeds the enumeration cap {max_n} (3^n assignments); "
            "raise max_n to force it")


def _scores(g: Digraph, beta: Optional[Fraction] = None):
    """Yield ``(assignment_indices, digits, score)`` chunk by chunk.

    ``score`` is ``max(reach_index(A), reach_index(B))`` for every surviving
    assignment: the pair violates r-robustness exactly when ``score < r``.
    """
    n = g.n
    mat = g.in_matrix()  # dense at any n the enumeration can reach
    deg = g.in_degrees().astype(np.float64)
    pow3 = 3 ** np.arange(n, dtype=np.int64)
    total = 3 ** n
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        digits = (idx[:, None] // pow3[None, :]) % 3
        in_a = digits == A
        in_b = digits == B
        keep = in_a.any(axis=1) & in_b.any(axis=1)
        first = np.argmax(digits != C, axis=1)
        keep &= digits[np.arange(idx.size), first] == A
        if beta is not None:
            need = beta * n
            keep &= (in_a.sum(axis=1) * need.denominator >= need.numerator)
            keep &= (in_b.sum(axis=1) * need.denominator >= need.numerator)
        if not keep.any():
            continue
        idx, digits, in_a, in_b = idx[keep], digits[keep], in_a[keep], in_b[keep]
        out_a = deg - in_a.astype(np.float64) @ mat.T
        out_b = deg - in_b.astype(np.float64) @ mat.T
        reach_a = np.where(in_a, out_a, -1.0).max(axis=1)
        reach_b = np.where(in_b, out_b, -1.0).max(axis=1)
        yield idx, digits, np.maximum(reach_a, reach_b).astype(np.int64)


def _first_violation(g: Digraph, r: int, beta=None) -> Optional[TriPartition]:
    for _, digits, score in _scores(g, beta):
        bad = np.flatnonzero(score < r)
        if bad.size:
            return TriPartition.from_labels(digits[bad[0]])
    return None


def exact_is_r_robust(g: Digraph, r: int, max_n: int = DEFAULT_MAX_N
                      ) -> tuple[bool, Optional[TriPartition]]:
    """Decide r-robustness exactly.

    Returns ``(True, None)`` or ``(False, witness)`` where neither side of the
    witness is r-reachable.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    _guard(g, max_n)
    witness = _first_violation(g, r)
    return witness is None, witness


def exact_max_robustness(g: Digraph, max_n: int = DEFAULT_MAX_N) -> int:
    """Largest r for which ``g`` is r-robust (0 when not even 1-robust)."""
    _guard(g, max_n)
    return int(min(score.min() for _, _, score in _scores(g)))


def exact_is_beta_close_robust(g: Digraph, r: int, beta_num: int, beta_den: int,
                               max_n: int = DEFAULT_MAX_N) -> bool:
    """r-robustness restricted to pairs with ``min(|A|, |B|) >= beta * n``.

    ``beta = beta_num / beta_den`` must lie in ``[1/n, 1]``; sizes are compared
    in exact integer arithmetic.
    """
    _guard(g, max_n)
    if beta_den <= 0:
        raise ValueError("beta_den must be positive")
    beta = Fraction(beta_num, beta_den)
    if not Fraction(1, g.n) <= beta <= 1:
        raise ValueError(f"beta={beta} outside [1/n, 1]")
    return _first_violation(g, r, beta) is None
