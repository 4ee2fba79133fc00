"""
Comparison centralities: betweenness (BC), closeness (CC), extended
neighborhood coreness (ENC), degree and global K-shell
"""

import logging
import os
import sys
from collections import deque
from functools import partial
from typing import Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config
from cks.coreness import kshell
from cks.errors import InvalidParameterError
from cks.graph import Graph, bfs_distance_array
from cks.parallel import make_blocks, run_blocks
from cks.ranking import CentralityResult

logger = logging.getLogger(__name__)

ENC_MODES = ("extended", "basic")


# =====================================================
# BETWEENNESS (Brandes)
# =====================================================
def _brandes_block(block: Tuple[int, int], g: Graph) -> np.ndarray:
    """Dependency sums for sources in [start, stop)"""
    start, stop = block
    n = g.node_count
    adjacency = g.adjacency
    partial_scores = np.zeros(n, dtype=np.float64)

    for s in range(start, stop):
        stack = []
        preds = [[] for _ in range(n)]
        sigma = [0] * n
        dist = [-1] * n
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            dv = dist[v]
            for w in adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue.append(w)
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)

        delta = [0.0] * n
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                partial_scores[w] += delta[w]

    return partial_scores


def betweenness(g: Graph, threads: Optional[int] = 1) -> CentralityResult:
    """Unnormalized shortest-path betweenness, each unordered pair counted once"""
    blocks = make_blocks(g.node_count, config.BRANDES_BLOCK)
    logger.debug(f"Brandes over {g.node_count} sources in {len(blocks)} blocks")
    scores = np.zeros(g.node_count, dtype=np.float64)
    # summed in block order so the result does not depend on the worker count
    for part in run_blocks(partial(_brandes_block, g=g), blocks, threads):
        scores += part
    return CentralityResult.from_scores("bc", scores / 2.0)


# =====================================================
# CLOSENESS
# =====================================================
def closeness(g: Graph) -> CentralityResult:
    """
    Wasserman-Faust closeness

    (r-1)/sum(d) over the r nodes reachable from v (v included), scaled by
    (r-1)/(n-1) so nodes in small components are not favored.
    """
    n = g.node_count
    scores = np.zeros(n, dtype=np.float64)
    if n <= 1:
        return CentralityResult.from_scores("cc", scores)

    for v in range(n):
        dist = bfs_distance_array(g, v)
        reached = dist[dist > 0]
        if len(reached) == 0:
            continue
        r_minus_1 = len(reached)
        scores[v] = (r_minus_1 / reached.sum()) * (r_minus_1 / (n - 1))
    return CentralityResult.from_scores("cc", scores)


# =====================================================
# NEIGHBORHOOD CORENESS
# =====================================================
def enc(g: Graph, mode: str = "extended") -> CentralityResult:
    """
    Neighborhood coreness on the global K-shell

    basic:    C(v)  = sum_{u in N(v)} ks(u)
    extended: C+(v) = sum_{u in N(v)} C(u)
    """
    if mode not in ENC_MODES:
        raise InvalidParameterError(f"enc mode must be one of {ENC_MODES}, got {mode!r}")
    shells = kshell(g).shell.astype(np.float64)
    basic = np.array([shells[list(nbrs)].sum() if nbrs else 0.0 for nbrs in g.adjacency])
    if mode == "basic":
        return CentralityResult.from_scores("enc-basic", basic)
    extended = np.array([basic[list(nbrs)].sum() if nbrs else 0.0 for nbrs in g.adjacency])
    return CentralityResult.from_scores("enc", extended)


# =====================================================
# SANITY BASELINES
# =====================================================
def degree_centrality(g: Graph) -> CentralityResult:
    return CentralityResult.from_scores("degree", g.degrees.astype(np.float64))


def kshell_centrality(g: Graph) -> CentralityResult:
    return CentralityResult.from_scores("kshell", kshell(g).shell.astype(np.float64))
