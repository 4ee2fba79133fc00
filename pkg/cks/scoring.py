"""
CKS centrality: K-Shell Entropy and CKS-Score

Pipeline for a graph:
1. Louvain communities
2. isolate communities (drop inter-community edges)
3. K-shell inside every community (community K-shell)
4. per node, per connected community c:
       KSE(v, c) = - sum_s K_s * (eta_vs / eta_vc) * ln(eta_vs / eta_vc)
   where eta_vs counts edges from v into shell s of c, eta_vc = sum_s eta_vs
5. CKS(v) = sum_c NN_c * KSE(v, c) * eta_vc, NN_c = size of community c

Nodes whose edges into every community land on a single shell score 0.
"""

import logging
import math
import os
import sys
import time
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config
from cks.community import CommunityPartition, louvain
from cks.coreness import ShellAssignment, community_kshell
from cks.errors import InvalidParameterError
from cks.graph import Graph
from cks.parallel import make_blocks, run_blocks
from cks.ranking import ScoreTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommunityProfile:
    """Edge histogram of one node: community -> community shell -> edge count"""

    node: int
    eta: Dict[int, Dict[int, int]] = field(default_factory=dict)

    @property
    def communities(self) -> List[int]:
        return sorted(self.eta)

    def eta_total(self, c: int) -> int:
        return sum(self.eta.get(c, {}).values())

    @property
    def degree(self) -> int:
        return sum(self.eta_total(c) for c in self.eta)


@dataclass(frozen=True, eq=False)
class CKSResult:
    """Everything the ranking was built from"""

    partition: CommunityPartition
    community_shells: ShellAssignment
    table: ScoreTable
    seconds: float


def build_profile(g: Graph, p: CommunityPartition, cs: ShellAssignment, v: int) -> CommunityProfile:
    """Bucket every neighbor of v by (its community, its community shell)"""
    eta: Dict[int, Dict[int, int]] = {}
    assignment = p.assignment
    shell = cs.shell
    for u in g.neighbors(v):
        bucket = eta.setdefault(int(assignment[u]), {})
        s = int(shell[u])
        bucket[s] = bucket.get(s, 0) + 1
    return CommunityProfile(node=v, eta=eta)


def kse(histogram: Mapping[int, int], log_base: Optional[float] = None) -> float:
    """
    K-Shell Entropy of one node towards one community

    Args:
        histogram: shell K value -> number of edges into that shell
        log_base: logarithm base, natural log when None

    Raises:
        InvalidParameterError: no edges into the community
    """
    total = sum(histogram.values())
    if total <= 0:
        raise InvalidParameterError("KSE needs at least one edge into the community")

    entropy = 0.0
    # sorted: equal histograms must give identical bits
    for k_value in sorted(histogram):
        count = histogram[k_value]
        if count <= 0:
            continue
        ratio = count / total
        entropy -= k_value * ratio * math.log(ratio)
    if log_base is not None:
        entropy /= math.log(log_base)
    # normalizes -0.0
    return entropy + 0.0


def _profile_score(
    profile: CommunityProfile,
    sizes: np.ndarray,
    own_community: int,
    exclude_own_community: bool,
    log_base: Optional[float],
) -> float:
    score = 0.0
    for c in profile.communities:
        if exclude_own_community and c == own_community:
            continue
        histogram = profile.eta[c]
        score += float(sizes[c]) * kse(histogram, log_base) * sum(histogram.values())
    return score


def cks_score(
    g: Graph,
    p: CommunityPartition,
    cs: ShellAssignment,
    v: int,
    exclude_own_community: bool = False,
    log_base: Optional[float] = None,
) -> float:
    """CKS-Score of one node; 0 for a degree-0 node"""
    profile = build_profile(g, p, cs, v)
    return _profile_score(profile, p.sizes, p.community_of(v), exclude_own_community, log_base)


def _score_block(
    block: Tuple[int, int],
    g: Graph,
    p: CommunityPartition,
    cs: ShellAssignment,
    exclude_own_community: bool,
    log_base: Optional[float],
) -> np.ndarray:
    start, stop = block
    return np.array(
        [cks_score(g, p, cs, v, exclude_own_community, log_base) for v in range(start, stop)],
        dtype=np.float64,
    )


def score_nodes(
    g: Graph,
    p: CommunityPartition,
    cs: ShellAssignment,
    exclude_own_community: bool = False,
    log_base: Optional[float] = None,
    threads: Optional[int] = 1,
) -> np.ndarray:
    """CKS-Score for every node"""
    if g.node_count == 0:
        return np.zeros(0, dtype=np.float64)
    work = partial(
        _score_block, g=g, p=p, cs=cs,
        exclude_own_community=exclude_own_community, log_base=log_base,
    )
    parts = run_blocks(work, make_blocks(g.node_count, config.SCORE_BLOCK), threads)
    return np.concatenate(parts)


def rank_detailed(
    g: Graph,
    rng_seed: int = 0,
    resolution: float = config.DEFAULT_RESOLUTION,
    exclude_own_community: bool = False,
    log_base: Optional[float] = None,
    threads: Optional[int] = 1,
) -> CKSResult:
    """Full CKS pipeline; the recorded time covers community detection too"""
    started = time.perf_counter()
    partition = louvain(g, rng_seed=rng_seed, resolution=resolution)
    shells = community_kshell(g, partition, threads=threads)
    scores = score_nodes(g, partition, shells, exclude_own_community, log_base, threads)
    method = "cks-exclude-own" if exclude_own_community else "cks"
    table = ScoreTable.from_scores(method, scores)
    seconds = time.perf_counter() - started
    logger.info(
        f"CKS ranking done in {seconds:.3f}s: {int(np.count_nonzero(scores))} of "
        f"{g.node_count} nodes with positive score"
    )
    return CKSResult(partition=partition, community_shells=shells, table=table, seconds=seconds)


def rank(
    g: Graph,
    rng_seed: int = 0,
    resolution: float = config.DEFAULT_RESOLUTION,
    exclude_own_community: bool = False,
    log_base: Optional[float] = None,
    threads: Optional[int] = 1,
) -> ScoreTable:
    return rank_detailed(g, rng_seed, resolution, exclude_own_community, log_base, threads).table
