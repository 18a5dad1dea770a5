"""
Sample-based testing of a 200-vertex graph
==========================================

Enumeration is hopeless at n=200, so the tester samples t vertices, splits
the sample, grows each split to the whole graph and checks the result. A
reject comes with a split that can be verified directly.
"""

import time

from rrobust import PlantedSpec, generate_planted
from rrobust.graph import is_r_reachable, min_in_degree
from rrobust.sampling import sample_size
from rrobust.tester import TestConfig, amplification_repeats, amplified_test, sampled_rbst_tst

# hidden blocks A and B of 70 vertices; the graph is 10-robust, not 11-robust
g, truth = generate_planted(PlantedSpec(200, 70, 70, 10, seed=3))
print("n =", g.n, " m =", g.m, " d_min =", min_in_degree(g)[1])

# with delta_cap=30 the sample size that carries the guarantee is large
print("guaranteed t for eps=0.15:", sample_size(30, 200, "1/3"))

# in practice a sample of 9 and three fresh trials already find violations
cfg = TestConfig(r=11, delta_cap=30, t=9, trials=3, seed=3)
start = time.perf_counter()
out = sampled_rbst_tst(g, cfg)
print(f"verdict {out.verdict} after {out.partitions_examined} partitions "
      f"({time.perf_counter() - start:.2f}s)")

if out.rejected:
    a, b, _ = out.witness.sorted_blocks()
    print("|A'| =", len(a), " |B'| =", len(b), " witness_R =", out.witness_R)
    # the witness refutes 41-robustness without trusting the sampler
    print("A' 41-reachable?", is_r_reachable(g, a, 41))
    print("B' 41-reachable?", is_r_reachable(g, b, 41))
    # the sides line up with the hidden blocks, in either order
    print("A' inside hidden A / B:", len(set(a) & truth.a), "/", len(set(a) & truth.b))
    print("B' inside hidden A / B:", len(set(b) & truth.a), "/", len(set(b) & truth.b))

# repeating the test drives the chance of a wrong accept down geometrically
print("repeats for sigma=0.01:", amplification_repeats("0.01"))
out = amplified_test(g, cfg, "0.01")
print("amplified verdict:", out.verdict, "in run", out.run_of_rejection)
