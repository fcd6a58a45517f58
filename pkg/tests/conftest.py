import itertools

import pytest
from hypothesis import strategies as st

from hamdeck.graphs import Graph, build_graph, complete_graph


@st.composite
def small_graphs(draw, min_n: int = 2, max_n: int = 8):
    """Arbitrary simple graphs on up to max_n vertices."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def dense_graphs(draw, min_n: int = 4, max_n: int = 10):
    """Graphs biased dense enough for expansion properties to hold."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    drop = draw(st.sets(st.integers(0, len(pairs) - 1), max_size=len(pairs) // 4))
    return build_graph(n, [p for i, p in enumerate(pairs) if i not in drop])


def two_disjoint_k4() -> Graph:
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    edges += [(i, j) for i in range(4, 8) for j in range(i + 1, 8)]
    return build_graph(8, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


@pytest.fixture
def k5_file(tmp_path):
    from hamdeck.graphs import save_edge_list

    path = tmp_path / "k5.edges"
    save_edge_list(complete_graph(5), path)
    return str(path)
