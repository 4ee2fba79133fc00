"""
Louvain community detection and community isolation

Louvain here is the classic two-phase procedure: greedy local moves until a
pass stops improving modularity, then aggregation of communities into
super-nodes, repeated while modularity keeps improving. The node visit order
of every pass is shuffled by a seeded numpy Generator, so a given seed always
reproduces the same assignment.
"""

import logging
import os
import sys
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config
from cks.errors import InvalidParameterError
from cks.graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CommunityPartition:
    """Node -> community assignment with community sizes (NN_c)"""

    assignment: np.ndarray
    community_count: int
    sizes: np.ndarray

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == c)

    def community_of(self, v: int) -> int:
        return int(self.assignment[v])


@dataclass(frozen=True, eq=False)
class IsolatedCommunity:
    community_id: int
    graph: Graph
    local_to_global: np.ndarray


def partition_from_assignment(labels: Sequence[int]) -> CommunityPartition:
    """Renumber arbitrary community labels 0..comm-1 by first appearance"""
    remap: Dict[int, int] = {}
    assignment = np.empty(len(labels), dtype=np.int64)
    for v, label in enumerate(labels):
        label = int(label)
        if label not in remap:
            remap[label] = len(remap)
        assignment[v] = remap[label]
    sizes = np.bincount(assignment, minlength=len(remap)).astype(np.int64)
    return CommunityPartition(assignment=assignment, community_count=len(remap), sizes=sizes)


def singleton_partition(g: Graph) -> CommunityPartition:
    return partition_from_assignment(range(g.node_count))


# =====================================================
# MODULARITY
# =====================================================
def modularity(g: Graph, p: CommunityPartition, resolution: float = config.DEFAULT_RESOLUTION) -> float:
    """
    Newman-Girvan modularity scaled by resolution

    Q = sum_c [ in_c / 2m - resolution * (tot_c / 2m)^2 ]
    where in_c counts intra-community edge ends and tot_c is the degree sum.
    """
    if len(p.assignment) != g.node_count:
        raise InvalidParameterError(
            f"partition covers {len(p.assignment)} nodes, graph has {g.node_count}"
        )
    m = g.edge_count
    if m == 0:
        return 0.0

    two_m = 2.0 * m
    tot = np.bincount(p.assignment, weights=g.degrees, minlength=p.community_count)
    inside = np.zeros(p.community_count)
    for u, v in g.edges():
        cu = p.assignment[u]
        if cu == p.assignment[v]:
            inside[cu] += 2.0
    return float(np.sum(inside / two_m - resolution * (tot / two_m) ** 2))


def _level_modularity(
    links: List[Dict[int, float]],
    loops: List[float],
    comm: List[int],
    two_m: float,
    resolution: float,
) -> float:
    inside: Dict[int, float] = {}
    tot: Dict[int, float] = {}
    for i, nbrs in enumerate(links):
        c = comm[i]
        k = 2.0 * loops[i]
        inner = 2.0 * loops[i]
        for j, w in nbrs.items():
            k += w
            if comm[j] == c:
                inner += w
        tot[c] = tot.get(c, 0.0) + k
        inside[c] = inside.get(c, 0.0) + inner
    return sum(inside[c] / two_m - resolution * (tot[c] / two_m) ** 2 for c in tot)


# =====================================================
# LOUVAIN
# =====================================================
def _one_level(
    links: List[Dict[int, float]],
    loops: List[float],
    two_m: float,
    resolution: float,
    rng: np.random.Generator,
) -> Tuple[List[int], float, float]:
    """Local-move phase on one level graph; returns (communities, q_before, q_after)"""
    n = len(links)
    k = [sum(nbrs.values()) + 2.0 * loops[i] for i, nbrs in enumerate(links)]
    comm = list(range(n))
    tot = k[:]

    start_q = _level_modularity(links, loops, comm, two_m, resolution)
    current_q = start_q
    modified = True
    while modified:
        modified = False
        for i in rng.permutation(n).tolist():
            ci = comm[i]
            ki = k[i]
            neigh: Dict[int, float] = {}
            for j, w in links[i].items():
                cj = comm[j]
                neigh[cj] = neigh.get(cj, 0.0) + w

            tot[ci] -= ki
            factor = resolution * ki / two_m
            # ties keep the current community, otherwise the lowest id wins
            best = ci
            best_gain = neigh.get(ci, 0.0) - tot[ci] * factor
            for c in sorted(neigh):
                gain = neigh[c] - tot[c] * factor
                if gain > best_gain:
                    best, best_gain = c, gain
            tot[best] += ki
            comm[i] = best
            if best != ci:
                modified = True

        new_q = _level_modularity(links, loops, comm, two_m, resolution)
        if new_q - current_q < config.LOUVAIN_MIN_GAIN:
            break
        current_q = new_q

    return comm, start_q, _level_modularity(links, loops, comm, two_m, resolution)


def _renumber(comm: List[int]) -> List[int]:
    remap: Dict[int, int] = {}
    return [remap.setdefault(c, len(remap)) for c in comm]


def _aggregate(
    links: List[Dict[int, float]],
    loops: List[float],
    comm: List[int],
) -> Tuple[List[Dict[int, float]], List[float]]:
    """Collapse each community into a super-node carrying its internal weight as a loop"""
    count = max(comm) + 1
    new_links: List[Dict[int, float]] = [{} for _ in range(count)]
    new_loops = [0.0] * count
    for i, nbrs in enumerate(links):
        ci = comm[i]
        new_loops[ci] += loops[i]
        target = new_links[ci]
        for j, w in nbrs.items():
            cj = comm[j]
            if cj == ci:
                # every internal edge is seen from both ends
                new_loops[ci] += w / 2.0
            else:
                target[cj] = target.get(cj, 0.0) + w
    return new_links, new_loops


def louvain(
    g: Graph,
    rng_seed: int = 0,
    resolution: float = config.DEFAULT_RESOLUTION,
) -> CommunityPartition:
    """
    Louvain community detection

    Args:
        g: non-empty graph
        rng_seed: seeds the node visit order of every pass
        resolution: modularity resolution, > 0

    Returns:
        CommunityPartition renumbered by first appearance in node order
    """
    if resolution <= 0:
        raise InvalidParameterError(f"resolution must be > 0, got {resolution}")
    if g.node_count == 0:
        raise InvalidParameterError("graph is empty")
    if g.edge_count == 0:
        return singleton_partition(g)

    rng = np.random.default_rng(rng_seed)
    two_m = 2.0 * g.edge_count
    links: List[Dict[int, float]] = [dict.fromkeys(nbrs, 1.0) for nbrs in g.adjacency]
    loops = [0.0] * g.node_count
    membership = list(range(g.node_count))

    level = 0
    while True:
        comm, before, after = _one_level(links, loops, two_m, resolution, rng)
        if after - before < config.LOUVAIN_MIN_GAIN:
            break
        comm = _renumber(comm)
        membership = [comm[c] for c in membership]
        links, loops = _aggregate(links, loops, comm)
        level += 1
        logger.debug(f"Louvain level {level}: {len(links)} communities, Q={after:.6f}")
        if len(links) == 1:
            break

    partition = partition_from_assignment(membership)
    logger.info(
        f"Louvain found {partition.community_count} communities "
        f"(seed={rng_seed}, resolution={resolution}, levels={level})"
    )
    return partition


# =====================================================
# ISOLATION
# =====================================================
def isolate_communities(g: Graph, p: CommunityPartition) -> List[IsolatedCommunity]:
    """One induced subgraph per community; inter-community edges are dropped"""
    if len(p.assignment) != g.node_count:
        raise InvalidParameterError("partition does not cover the graph")
    order = np.argsort(p.assignment, kind="stable")
    bounds = np.cumsum(p.sizes)[:-1]
    isolated = []
    for c, nodes in enumerate(np.split(order, bounds)):
        subgraph, local_to_global = g.subgraph(nodes)
        isolated.append(IsolatedCommunity(community_id=c, graph=subgraph, local_to_global=local_to_global))
    return isolated


def inter_community_edge_count(g: Graph, p: CommunityPartition) -> int:
    return sum(1 for u, v in g.edges() if p.assignment[u] != p.assignment[v])
