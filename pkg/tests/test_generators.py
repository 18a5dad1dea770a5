import numpy as np
import pytest

from rrobust import PlantedSpec, generate_planted, generate_uniform_digraph
from rrobust.exact import exact_max_robustness
from rrobust.generators import parse_ground_truth, write_ground_truth
from rrobust.graph import Digraph, min_in_degree, outside_count
from rrobust.tester import TestConfig, test_reach


def test_planted_edge_count(planted200):
    g, truth = planted200
    # 70*69 twice, 60*59, 140*10 random, 140*60 into C
    assert g.m == 4830 + 4830 + 3540 + 1400 + 8400 == 23000
    assert len(truth.a) == len(truth.b) == 70 and len(truth.c) == 60


def test_planted_ground_truth(planted200):
    g, truth = planted200
    for block in (truth.a, truth.b):
        assert all(outside_count(g, u, block) == 10 for u in block)
    assert not test_reach(g, truth, TestConfig(r=1, delta_cap=10))
    # every C vertex hears from all of A and B
    for v in truth.c:
        assert set(truth.a | truth.b) <= set(g.in_neighbors(v).tolist())


@pytest.mark.parametrize("size_a, size_b, rbar", [(70, 70, 10), (30, 30, 10), (50, 40, 7)])
def test_planted_min_degree(size_a, size_b, rbar):
    g, truth = generate_planted(PlantedSpec(200, size_a, size_b, rbar, seed=3))
    v, d = min_in_degree(g)
    assert d == min(size_a, size_b) - 1 + rbar
    assert v in truth.a | truth.b


@pytest.mark.parametrize("seed", range(8))
def test_planted_small_exact(seed):
    g, _ = generate_planted(PlantedSpec(12, 4, 4, 2, seed=seed))
    assert exact_max_robustness(g) == 2


def test_planted_n13():
    g, _ = generate_planted(PlantedSpec(13, 4, 5, 2, seed=1))
    assert exact_max_robustness(g) == 2


def test_relabel_invariance():
    g0, _ = generate_planted(PlantedSpec(12, 4, 4, 2, seed=5))
    perm = np.random.default_rng(1).permutation(12)
    g1 = Digraph.from_edges(12, perm[g0.edges()])
    assert exact_max_robustness(g1) == exact_max_robustness(g0)


def test_planted_seeded():
    a = generate_planted(PlantedSpec(40, 12, 12, 3, seed=9))
    b = generate_planted(PlantedSpec(40, 12, 12, 3, seed=9))
    assert a == b


@pytest.mark.parametrize("spec", [
    PlantedSpec(200, 70, 70, 31),
    PlantedSpec(12, 4, 5, 2),       # |C| = 3 = 2*rbar - 1
    PlantedSpec(10, 6, 6, 1),
    PlantedSpec(20, 6, 6, 0),
])
def test_planted_rejects_bad_spec(spec):
    with pytest.raises(ValueError):
        generate_planted(spec)


def test_ground_truth_round_trip(planted200):
    g, truth = planted200
    text = write_ground_truth(truth, 10)
    assert text.splitlines()[2] == "rbar: 10"
    assert parse_ground_truth(text, g.n) == (truth, 10)


class TestUniform:
    def test_full(self):
        g = generate_uniform_digraph(9, 1)
        assert g.m == 72

    def test_empty(self):
        assert generate_uniform_digraph(9, 0).m == 0

    def test_edge_count(self):
        counts = [generate_uniform_digraph(10, 0.5, seed=s).m for s in range(200)]
        # Binomial(90, 1/2): sd ~4.74, mean of 200 has sd ~0.34
        assert abs(np.mean(counts) - 45) < 1.5
        assert all(20 <= c <= 70 for c in counts)

    def test_range(self):
        with pytest.raises(ValueError):
            generate_uniform_digraph(5, 1.5)
