"""
Exact robustness by enumeration
===============================

For graphs of up to 13 vertices every split into (A, B, C) can be checked.
The oracle reports the first violating split it meets, or none.
"""

from rrobust import Digraph, PlantedSpec, generate_planted
from rrobust.exact import exact_is_beta_close_robust, exact_is_r_robust, exact_max_robustness

# a complete digraph on n vertices is ceil(n/2)-robust
k6 = Digraph.from_edges(6, [(a, b) for a in range(6) for b in range(6) if a != b])
print("K6 max robustness:", exact_max_robustness(k6))

# a directed 5-cycle: every vertex has one in-neighbor
c5 = Digraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
ok, witness = exact_is_r_robust(c5, 2)
print("C5 2-robust?", ok)
print("violating split:", witness.sorted_blocks())

# beta-closeness only looks at splits where both sides have >= beta*n vertices
print("C5 2-robust on sets of size >= 3?", exact_is_beta_close_robust(c5, 2, 3, 5))

# planted graphs come with their robustness built in
g, truth = generate_planted(PlantedSpec(12, 4, 4, 2, seed=0))
print("planted rbar=2, enumerated:", exact_max_robustness(g))
print("hidden blocks:", truth.sorted_blocks())
