"""
Bracketing the maximal robustness
=================================

Each accept raises the lower end and each reject lowers the upper end. The
search stops once the bracket is narrower than (1 + beta) * delta_cap.
"""

from fractions import Fraction

from rrobust import Digraph, PlantedSpec, generate_planted
from rrobust.estimation import interval_estimate

k12 = Digraph.from_edges(12, [(a, b) for a in range(12) for b in range(12) if a != b])
est = interval_estimate(k12, 2, 1, 1, Fraction(1, 10), seed=0)
print("K12 (true value 6):", f"[{est.lo}, {est.hi}]")
for r, verdict in est.per_call_outcomes:
    print(f"  tested r={r}: {verdict}")

# a bigger graph with a hidden weak split
g, _ = generate_planted(PlantedSpec(200, 70, 70, 10, seed=1))
est = interval_estimate(g, 30, 1, 2, Fraction(1, 10), seed=0)
print("planted rbar=10:", f"[{est.lo}, {est.hi}]", "after", est.iterations, "calls")
for note in est.notes:
    print("  note:", note)
