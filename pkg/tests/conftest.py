import os
import sys

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import networkx as nx
import pytest

from cks.graph import Graph
from helpers import from_nx, two_k4_with_bridge_edge


@pytest.fixture
def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def path4() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def star4() -> Graph:
    """K1,4 with center 0"""
    return Graph.from_edges(5, [(0, i) for i in range(1, 5)])


@pytest.fixture
def k5() -> Graph:
    return from_nx(nx.complete_graph(5))


@pytest.fixture
def two_k4() -> Graph:
    return two_k4_with_bridge_edge()


@pytest.fixture(scope="session")
def karate() -> Graph:
    return from_nx(nx.karate_club_graph())
