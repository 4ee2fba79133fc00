"""
K-shell (core number) decomposition, globally and per isolated community
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from cks.community import CommunityPartition, IsolatedCommunity, isolate_communities
from cks.graph import Graph
from cks.parallel import run_blocks

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ShellAssignment:
    """Per-node K-shell index on the graph it was computed on"""

    shell: np.ndarray
    max_shell: int

    @classmethod
    def from_array(cls, shell: np.ndarray) -> "ShellAssignment":
        shell = np.asarray(shell, dtype=np.int64)
        return cls(shell=shell, max_shell=int(shell.max()) if len(shell) else 0)


def kshell(g: Graph) -> ShellAssignment:
    """
    Core numbers with the O(E) bucket algorithm (Batagelj-Zaversnik)

    Nodes sit in an array sorted by current degree; processing them in
    order and moving each higher-degree neighbor one bucket down keeps the
    array sorted, and the degree at processing time is the core number.
    """
    n = g.node_count
    if n == 0:
        return ShellAssignment.from_array(np.zeros(0, dtype=np.int64))

    adjacency = g.adjacency
    deg = g.degrees.tolist()
    max_degree = max(deg)

    bucket = [0] * (max_degree + 1)
    for d in deg:
        bucket[d] += 1
    start = 0
    for d in range(max_degree + 1):
        count = bucket[d]
        bucket[d] = start
        start += count

    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bucket[deg[v]]
        vert[pos[v]] = v
        bucket[deg[v]] += 1
    for d in range(max_degree, 0, -1):
        bucket[d] = bucket[d - 1]
    bucket[0] = 0

    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for u in adjacency[v]:
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bucket[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bucket[du] += 1
                deg[u] = du - 1

    return ShellAssignment.from_array(np.asarray(deg, dtype=np.int64))


def naive_kshell(g: Graph) -> ShellAssignment:
    """Repeated peeling, O(V^2); reference for kshell"""
    deg = g.degrees.tolist()
    core = [0] * g.node_count
    alive = set(range(g.node_count))
    k = 0
    while alive:
        changed = True
        while changed:
            changed = False
            for v in sorted(alive):
                if v in alive and deg[v] <= k:
                    core[v] = k
                    alive.discard(v)
                    for u in g.adjacency[v]:
                        if u in alive:
                            deg[u] -= 1
                    changed = True
        k += 1
    return ShellAssignment.from_array(np.asarray(core, dtype=np.int64))


def _community_shells(community: IsolatedCommunity) -> np.ndarray:
    return kshell(community.graph).shell


def community_kshell(
    g: Graph,
    p: CommunityPartition,
    threads: Optional[int] = 1,
) -> ShellAssignment:
    """
    Community K-shell: core numbers computed inside each isolated community

    Values stay community-local (not renumbered); a node with no edges inside
    its community gets shell 0.
    """
    communities = isolate_communities(g, p)
    results = run_blocks(_community_shells, communities, threads)

    shell = np.zeros(g.node_count, dtype=np.int64)
    for community, local in zip(communities, results):
        shell[community.local_to_global] = local

    assignment = ShellAssignment.from_array(shell)
    logger.info(
        f"Community K-shell over {len(communities)} communities, max shell {assignment.max_shell}"
    )
    return assignment
