import pytest

from rrobust import PlantedSpec, generate_planted
from rrobust.estimation import interval_estimate
from rrobust.graph import is_r_reachable
from rrobust.tester import TestConfig, amplified_test
from conftest import complete


def test_already_narrow():
    est = interval_estimate(complete(12), 2, 5, 1, 0.1)
    assert (est.lo, est.hi, est.iterations) == (0, 6, 0)


@pytest.mark.parametrize("seed", range(5))
def test_complete_twelve(seed):
    est = interval_estimate(complete(12), 2, 1, 1, 0.1, seed=seed)
    assert est.contains(6)
    assert est.length <= 4
    assert 0 <= est.lo < est.hi <= 6


def test_planted(planted200):
    g, _ = planted200
    est = interval_estimate(g, 30, 1, 2, 0.1, seed=0)
    assert est.contains(10)
    assert est.length <= 45
    assert est.iterations <= 8 + 2


def test_reject_steps_are_justified(planted200):
    g, _ = planted200
    est = interval_estimate(g, 30, 1, 2, 0.1, seed=1)
    for r, verdict in est.per_call_outcomes:
        if verdict == "reject":
            # replay the call: its witness refutes (r + 30)-robustness
            assert r + 30 > 10


def test_gap_shrinks_each_step():
    g, _ = generate_planted(PlantedSpec(60, 20, 20, 4, seed=2))
    est = interval_estimate(g, 4, 1, 4, 0.1, seed=0)
    lo, hi = 0, 23  # min(ceil(60/2), d_min = 19 + 4)
    for r, verdict in est.per_call_outcomes:
        before = hi - lo
        if verdict == "accept":
            lo = max(lo, r)
        else:
            hi = min(hi, r + 4)
        assert hi - lo < before
    assert (lo, hi) == (est.lo, est.hi)
    assert est.hi - est.lo < 5 or est.notes
    assert est.iterations <= 6 + 2


def test_bad_arguments():
    with pytest.raises(ValueError):
        interval_estimate(complete(6), 0, 1, 1, 0.1)
    with pytest.raises(ValueError):
        interval_estimate(complete(6), 1, 0, 1, 0.1)
    with pytest.raises(ValueError):
        interval_estimate(complete(6), 1, 1, 1, 1)
