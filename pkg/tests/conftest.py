import random

import pytest
from hypothesis import strategies as st

from ktrees.graph import Graph, WeightedGraph


def complete_pairs(n):
    return [(u, v) for v in range(n) for u in range(v)]


def random_multigraph(rng: random.Random, n: int, m: int) -> Graph:
    if n < 2 and m:
        raise ValueError("a single vertex carries no loop-free edges")
    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v))
    return Graph(n, edges)


@st.composite
def small_graphs(draw, max_n=7, max_m=12):
    n = draw(st.integers(2, max_n))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    edges = draw(st.lists(pair, max_size=max_m))
    return Graph(n, edges)


@st.composite
def small_weighted(draw, max_n=6, max_m=14):
    g = draw(small_graphs(max_n=max_n, max_m=max_m))
    w = draw(st.lists(st.integers(0, 5).map(float), min_size=g.m, max_size=g.m))
    return WeightedGraph(g, w)


@pytest.fixture
def k4():
    return Graph(4, complete_pairs(4))


ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS, key=str):
        ok, detail = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
