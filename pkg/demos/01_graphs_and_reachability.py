"""
Digraphs, reachable sets and the in-degree check
================================================

A set S is r-reachable when some vertex of S has at least r in-neighbors
outside S. This walk-through builds small graphs and asks that question.
"""

import io

from rrobust import Digraph
from rrobust.graph import exam_degree, is_r_reachable, min_in_degree, parse_edge_list, reach_index, write_edge_list

# two directed triangles with no edges between them
edges = [(a, b) for tri in ((0, 1, 2), (3, 4, 5)) for a in tri for b in tri if a != b]
g = Digraph.from_edges(6, edges)
print(g.n, "vertices,", g.m, "edges")

# the in-neighbors of a vertex come straight from the CSR arrays
print("in-neighbors of 4:", g.in_neighbors(4).tolist())

# a triangle receives nothing from outside, so it is not even 1-reachable
print("{0,1,2} 1-reachable?", is_r_reachable(g, {0, 1, 2}, 1))

# split a triangle instead: vertex 0 now sees 1 and 2 from outside
print("{0} reach index:", reach_index(g, {0}))
print("{0} 2-reachable?", is_r_reachable(g, {0}, 2))

# the canonical edge-list text round-trips exactly
text = write_edge_list(g)
print(text.splitlines()[0], "...")
assert parse_edge_list(io.StringIO(text)) == g

# the minimum in-degree bounds the robustness from above; exam_degree returns
# a low-degree vertex when d_min <= 2r + delta_cap, and None otherwise
print("smallest in-degree (vertex, degree):", min_in_degree(g))
print("exam_degree r=1, delta_cap=0:", exam_degree(g, 1, 0))

# a complete digraph on 6 vertices has d_min = 5 > 2*1 + 1
k6 = Digraph.from_edges(6, [(a, b) for a in range(6) for b in range(6) if a != b])
print("K6 exam_degree r=1, delta_cap=1:", exam_degree(k6, 1, 1))
