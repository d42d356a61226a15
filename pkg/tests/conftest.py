import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from gedwalk.graph import Graph, gen_erdos_renyi, normalize_symmetric

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def undirected(n, edges):
    return Graph.from_edges(n, edges)


@pytest.fixture
def K3():
    return undirected(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def P3():
    return undirected(3, [(0, 1), (1, 2)])


@pytest.fixture
def star4():
    return undirected(4, [(0, 1), (0, 2), (0, 3)])


def named_small_graphs():
    """Hand-picked graphs with n <= 10."""
    cycle = lambda n: [(i, (i + 1) % n) for i in range(n)]
    petersen = cycle(5) + [(5 + i, 5 + (i + 2) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    return {
        "K3": undirected(3, [(0, 1), (1, 2), (0, 2)]),
        "P3": undirected(3, [(0, 1), (1, 2)]),
        "star4": undirected(4, [(0, 1), (0, 2), (0, 3)]),
        "K4": undirected(4, list(itertools.combinations(range(4), 2))),
        "C5": undirected(5, cycle(5)),
        "P6": undirected(6, [(i, i + 1) for i in range(5)]),
        "K33": undirected(6, [(i, j) for i in range(3) for j in range(3, 6)]),
        "petersen": undirected(10, petersen),
        "lollipop": undirected(7, list(itertools.combinations(range(4), 2)) + [(3, 4), (4, 5), (5, 6)]),
        "dicycle": Graph.from_edges(4, cycle(4), directed=True),
        "dimix": Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 1), (0, 4)], directed=True),
    }


def random_small_graphs(count, seed=0, n_range=(4, 10), ps=(0.2, 0.5), connected=False):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        p = float(ps[len(out) % len(ps)])
        g = gen_erdos_renyi(n, p, int(rng.integers(1 << 62)))
        if g.m == 0:
            continue
        if connected:
            from gedwalk.graph import largest_connected_component
            if largest_connected_component(g).n != n:
                continue
        out.append(g)
    return out


def small_test_suite():
    """Named graphs, random graphs and a few normalized (weighted) ones, all n <= 10."""
    suite = dict(named_small_graphs())
    for i, g in enumerate(random_small_graphs(24, seed=11)):
        suite[f"er{i}"] = g
    for name in ("K4", "C5", "petersen", "lollipop"):
        suite[f"{name}-norm"] = normalize_symmetric(suite[name])
    return suite


@st.composite
def small_graphs(draw, min_n=1, max_n=7, directed=None):
    n = draw(st.integers(min_n, max_n))
    is_directed = draw(st.booleans()) if directed is None else directed
    pairs = list(itertools.permutations(range(n), 2) if is_directed else itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, c in zip(pairs, chosen) if c]
    return Graph.from_edges(n, edges, directed=is_directed)


@st.composite
def graph_and_group(draw, **kw):
    g = draw(small_graphs(**kw))
    group = draw(st.sets(st.integers(0, g.n - 1), max_size=g.n))
    return g, sorted(group)
