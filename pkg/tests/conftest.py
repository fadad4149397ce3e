import random
from pathlib import Path

import pytest

FIXTURES = Path(__file__).with_name("fixtures")


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_config(n, rng):
    c = list(range(n))
    rng.shuffle(c)
    return tuple(c)


def random_graph(n, p, rng):
    from fsgraphs.graph import Graph
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_tree(n, rng):
    """Uniform-ish random labelled tree from a random Pruefer-like attachment."""
    from fsgraphs.graph import Graph
    order = list(range(n))
    rng.shuffle(order)
    return Graph(n, [(order[i], order[rng.randrange(i)]) for i in range(1, n)])


def min_degree_graph(n, d, rng):
    """Random graph with minimum degree exactly d: thin K_n while every degree stays >= d."""
    from fsgraphs.graph import Graph
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(edges)
    deg = [n - 1] * n
    keep = []
    for u, v in edges:
        if deg[u] > d and deg[v] > d:
            deg[u] -= 1
            deg[v] -= 1
        else:
            keep.append((u, v))
    g = Graph(n, keep)
    if min(deg) > d:
        # force one vertex down to d so the instance sits on the boundary
        u = deg.index(min(deg))
        extra = [w for w in g.adj[u]][: deg[u] - d]
        g = Graph(n, [e for e in keep if not (u in e and (e[0] if e[1] == u else e[1]) in extra)])
    return g


# acceptance lines collected by tests/test_acceptance.py and echoed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
