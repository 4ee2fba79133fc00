"""
Graph builders and independent reference implementations for the test suite
"""

from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import networkx as nx
import numpy as np

from cks.community import CommunityPartition, partition_from_assignment
from cks.graph import Graph


def from_nx(G: nx.Graph) -> Graph:
    """Graph with ids in G.nodes() order and str(node) labels"""
    nodes = list(G.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in G.edges()]
    return Graph.from_edges(len(nodes), edges, [str(node) for node in nodes])


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.node_count))
    G.add_edges_from(g.edges())
    return G


def clique_edges(nodes: Sequence[int]) -> List[Tuple[int, int]]:
    return list(combinations(nodes, 2))


def two_k4_with_bridge_edge() -> Graph:
    """Cliques 0-3 and 4-7 joined by the edge 3-4"""
    edges = clique_edges(range(4)) + clique_edges(range(4, 8)) + [(3, 4)]
    return Graph.from_edges(8, edges)


def k4_pendant_pair_with_bridge_node() -> Tuple[Graph, CommunityPartition]:
    """
    Two K4-plus-pendant blocks and a bridge node x = 10

    block A: clique 0-3, pendant 4 on 0; block B: clique 5-8, pendant 9 on 5.
    x is adjacent to 1 and 4 in A and to 6 and 9 in B, and belongs to A.
    """
    edges = clique_edges(range(4)) + [(0, 4)]
    edges += clique_edges(range(5, 9)) + [(5, 9)]
    edges += [(10, 1), (10, 4), (10, 6), (10, 9)]
    g = Graph.from_edges(11, edges)
    partition = partition_from_assignment([0] * 5 + [1] * 5 + [0])
    return g, partition


def planted_with_bridges(
    seed: int = 7,
    groups: int = 4,
    size: int = 30,
    p_in: float = 0.3,
    p_out: float = 0.01,
    bridge_edges: int = 4,
) -> Tuple[Graph, List[int]]:
    """Planted partition where the first node of every group links into all other groups"""
    G = nx.planted_partition_graph(groups, size, p_in, p_out, seed=seed)
    rng = np.random.default_rng(seed)
    bridges = [group * size for group in range(groups)]
    for group, bridge in enumerate(bridges):
        for other in range(groups):
            if other == group:
                continue
            members = np.arange(other * size, (other + 1) * size)
            for target in rng.choice(members, size=bridge_edges, replace=False):
                G.add_edge(bridge, int(target))
    return from_nx(G), bridges


def random_graphs(count: int, n: int = 40, seed: int = 0) -> List[Graph]:
    """Mix of sparse ER graphs (usually disconnected) and planted partitions"""
    graphs = []
    for i in range(count):
        if i % 2 == 0:
            G = nx.gnp_random_graph(n, 0.08, seed=seed + i)
        else:
            G = nx.planted_partition_graph(4, n // 4, 0.4, 0.03, seed=seed + i)
        if G.number_of_edges() == 0:
            G.add_edge(0, 1)
        graphs.append(from_nx(G))
    return graphs


def floyd_warshall(g: Graph) -> np.ndarray:
    """All-pairs hop distances, inf for unreachable pairs"""
    n = g.node_count
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for u, v in g.edges():
        dist[u, v] = dist[v, u] = 1.0
    for k in range(n):
        dist = np.minimum(dist, dist[:, k:k + 1] + dist[k:k + 1, :])
    return dist


def oracle_cks_scores(g: Graph, partition: CommunityPartition) -> np.ndarray:
    """CKS straight from the definition, with networkx core numbers per community"""
    G = to_nx(g)
    assignment = partition.assignment
    shell: Dict[int, int] = {}
    for c in range(partition.community_count):
        members = [int(v) for v in np.flatnonzero(assignment == c)]
        shell.update(nx.core_number(G.subgraph(members)))

    scores = np.zeros(g.node_count)
    for v in range(g.node_count):
        per_community: Dict[int, Dict[int, int]] = {}
        for u in G.neighbors(v):
            bucket = per_community.setdefault(int(assignment[u]), {})
            bucket[shell[u]] = bucket.get(shell[u], 0) + 1
        for c, histogram in per_community.items():
            total = sum(histogram.values())
            entropy = -sum(
                k * (count / total) * np.log(count / total) for k, count in histogram.items()
            )
            scores[v] += partition.sizes[c] * entropy * total
    return scores
