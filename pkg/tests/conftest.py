import sys
import itertools
from pathlib import Path

import numpy as np
import pytest

from signavg import fixtures
from signavg.graph import SignedDigraph

GRAPH_DIR = Path(__file__).resolve().parent.parent / "graphs"


def reachable_from(a, src):
    """Nodes reachable from ``src`` following edges j -> i (a[i, j] != 0)."""
    seen = {src}
    stack = [src]
    while stack:
        j = stack.pop()
        for i in range(a.shape[0]):
            if a[i, j] != 0 and i not in seen:
                seen.add(i)
                stack.append(i)
    return seen


def brute_strongly_connected(g: SignedDigraph) -> bool:
    return all(len(reachable_from(g.weights, s)) == g.n for s in range(g.n))


def brute_balance_gauges(g: SignedDigraph):
    """All gauges with sigma_1 = +1 making D A D entrywise nonnegative."""
    out = []
    for tail in itertools.product([1.0, -1.0], repeat=g.n - 1):
        s = np.array((1.0,) + tail)
        if np.all(np.outer(s, s) * g.weights >= 0):
            out.append(s)
    return out


def brute_cofactors(g: SignedDigraph):
    a = np.abs(g.weights)
    lbar = np.diag(a.sum(axis=1)) - a
    return np.array([np.linalg.det(np.delete(np.delete(lbar, i, 0), i, 1)) for i in range(g.n)])


def random_graph(seed, n, balanced=None, **kw):
    return fixtures.random_signed_digraph(np.random.default_rng(seed), n, balanced=balanced, **kw)


@pytest.fixture
def digon():
    return fixtures.negative_digon()


@pytest.fixture
def skewed():
    return fixtures.skewed_cycle()


@pytest.fixture
def frustrated():
    return fixtures.frustrated_cycle()


@pytest.fixture
def sixnode():
    return fixtures.six_node_balanced()


@pytest.fixture(scope="session")
def small_battery():
    return fixtures.battery(seed=11, count=60)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.REPORT):
        terminalreporter.write_line(mod.REPORT[num])
