import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from rperg.graph import Graph


def from_nx(G) -> Graph:
    return Graph.from_edges(G.edges(), G.nodes())


def to_nx(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(g.vertices())
    G.add_edges_from(g.edges())
    return G


def random_connected(rng: random.Random, n: int, extra: float = 1.0) -> Graph:
    """Random spanning tree plus about ``extra * n`` random chords."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    target = min(n * (n - 1) // 2, len(edges) + int(extra * n * rng.random()))
    while len(edges) < target:
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(edges, range(n))


@st.composite
def connected_graphs(draw, min_n=2, max_n=10):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    extra = draw(st.floats(0.0, 2.0))
    return random_connected(random.Random(seed), n, extra)


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(chosen, range(n))


TRIANGLE = Graph.from_edges([(0, 1), (1, 2), (2, 0)])
BOWTIE = Graph.from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
C4 = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
K4 = from_nx(nx.complete_graph(4))


@pytest.fixture
def bowtie():
    return BOWTIE


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
