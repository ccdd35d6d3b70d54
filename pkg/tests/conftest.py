import pytest

from pairideal.graph import Graph, complete_graph, line_graph
from pairideal.ideal import GraphPair


def figure_graph() -> Graph:
    """The 4-cycle 1-2-3-4 with a pendant edge at 4."""
    return Graph(5, [(1, 2), (2, 3), (3, 4), (1, 4), (4, 5)])


def interval_graph(n: int, intervals: list[tuple[int, int]]) -> Graph:
    """Union of the cliques on the given label intervals."""
    edges = {
        (u, v)
        for lo, hi in intervals
        for u in range(lo, hi + 1)
        for v in range(u + 1, hi + 1)
    }
    return Graph(n, edges)


@pytest.fixture
def p3() -> Graph:
    return line_graph(3)


@pytest.fixture
def figure() -> Graph:
    return figure_graph()


@pytest.fixture
def figure_pair() -> GraphPair:
    return GraphPair(line_graph(3), figure_graph())


@pytest.fixture
def adjacent_3x3() -> GraphPair:
    return GraphPair(line_graph(3), line_graph(3))


@pytest.fixture
def k3k3() -> GraphPair:
    return GraphPair(complete_graph(3), complete_graph(3))
