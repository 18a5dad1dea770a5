import sys
from pathlib import Path

import pytest

from rrobust import Digraph

sys.path.insert(0, str(Path(__file__).parent))


def complete(n):
    return Digraph.from_edges(n, [(a, b) for a in range(n) for b in range(n) if a != b])


def star(n, center=0):
    edges = []
    for leaf in range(n):
        if leaf != center:
            edges += [(center, leaf), (leaf, center)]
    return Digraph.from_edges(n, edges)


def cycle(n):
    return Digraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def two_triangles():
    edges = []
    for tri in ((0, 1, 2), (3, 4, 5)):
        edges += [(a, b) for a in tri for b in tri if a != b]
    return Digraph.from_edges(6, edges)


@pytest.fixture(scope="session")
def planted200():
    from rrobust import PlantedSpec, generate_planted
    return generate_planted(PlantedSpec(200, 70, 70, 10, seed=1))


ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def record(request):
    """``record(num, ok, detail)`` stores one acceptance line for the summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, {})

    def _record(num, ok, detail):
        lines[num] = f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}"
        print(lines[num])
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(lines):
            terminalreporter.write_line(lines[num])
