"""
Independent Cascade simulation

Each newly activated node gets exactly one Bernoulli(p) attempt per inactive
neighbor. Rounds are synchronous; inside a round the frontier is processed in
ascending node id and neighbors in ascending id, so a run is a pure function
of its RNG stream. Run i of a Monte-Carlo batch always draws from
default_rng([master_seed, i]), whichever worker executes it.
"""

import logging
import os
import sys
from dataclasses import dataclass
from functools import partial
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config
from cks.errors import InvalidParameterError
from cks.graph import Graph
from cks.parallel import make_blocks, run_blocks

logger = logging.getLogger(__name__)


class DiffusionConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    activation_probability: float = Field(config.DEFAULT_P, ge=0.0, le=1.0)
    runs: int = Field(config.DEFAULT_RUNS, ge=1)
    master_seed: int = Field(0, ge=0)


@dataclass(frozen=True, eq=False)
class DiffusionOutcome:
    """Infected counts per run (indexed by run) and their FIS statistics"""

    counts: np.ndarray
    node_count: int
    seed_count: int

    @property
    def runs(self) -> int:
        return len(self.counts)

    @property
    def fis(self) -> np.ndarray:
        return self.counts / self.node_count

    @property
    def mean_infected(self) -> float:
        return float(self.counts.mean())

    @property
    def mean_fis(self) -> float:
        return float(self.fis.mean())

    @property
    def std_fis(self) -> float:
        """Sample standard deviation; 0 for a single run"""
        if self.runs < 2:
            return 0.0
        return float(self.fis.std(ddof=1))

    @property
    def std_error(self) -> float:
        return self.std_fis / np.sqrt(self.runs)


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"activation probability must be in [0, 1], got {p}")


def _check_seeds(g: Graph, seeds: Iterable[int]) -> Tuple[int, ...]:
    unique = tuple(sorted(set(int(s) for s in seeds)))
    if not unique:
        raise InvalidParameterError("seed set is empty")
    for s in unique:
        if not 0 <= s < g.node_count:
            raise InvalidParameterError(f"seed {s} outside 0..{g.node_count - 1}")
    return unique


def _cascade(g: Graph, seeds: Tuple[int, ...], p: float, rng: np.random.Generator) -> bytearray:
    active = bytearray(g.node_count)
    for s in seeds:
        active[s] = 1
    if p == 0.0:
        return active

    adjacency = g.adjacency
    frontier: List[int] = list(seeds)
    while frontier:
        activated = []
        for u in frontier:
            candidates = [w for w in adjacency[u] if not active[w]]
            if not candidates:
                continue
            draws = rng.random(len(candidates))
            for w, draw in zip(candidates, draws):
                if draw < p:
                    active[w] = 1
                    activated.append(w)
        frontier = sorted(activated)
    return active


def ic_run(g: Graph, seeds: Iterable[int], p: float, rng: np.random.Generator) -> FrozenSet[int]:
    """One Independent Cascade; returns the final active set"""
    _check_probability(p)
    active = _cascade(g, _check_seeds(g, seeds), p, rng)
    return frozenset(v for v in range(g.node_count) if active[v])


def run_stream(master_seed: int, run_index: int) -> np.random.Generator:
    """RNG of one Monte-Carlo run"""
    return np.random.default_rng([master_seed, run_index])


def _monte_carlo_block(
    block: Tuple[int, int],
    g: Graph,
    seeds: Tuple[int, ...],
    p: float,
    master_seed: int,
) -> np.ndarray:
    start, stop = block
    return np.array(
        [sum(_cascade(g, seeds, p, run_stream(master_seed, run))) for run in range(start, stop)],
        dtype=np.int64,
    )


def monte_carlo(
    g: Graph,
    seeds: Iterable[int],
    cfg: DiffusionConfig,
    threads: Optional[int] = 1,
) -> DiffusionOutcome:
    """cfg.runs independent cascades, aggregated into FIS statistics"""
    seeds = _check_seeds(g, seeds)
    p = cfg.activation_probability
    _check_probability(p)

    work = partial(_monte_carlo_block, g=g, seeds=seeds, p=p, master_seed=cfg.master_seed)
    parts = run_blocks(work, make_blocks(cfg.runs, config.MONTE_CARLO_BLOCK), threads)
    outcome = DiffusionOutcome(counts=np.concatenate(parts), node_count=g.node_count, seed_count=len(seeds))
    logger.info(
        f"IC: {cfg.runs} runs, p={p}, {len(seeds)} seeds -> "
        f"mean FIS {outcome.mean_fis:.4f} (std {outcome.std_fis:.4f})"
    )
    return outcome


def exact_expected_spread(g: Graph, seeds: Iterable[int], p: float) -> float:
    """
    Expected number of infected nodes, by live-edge enumeration

    Every edge is live with probability p independently; the expected spread
    is the probability-weighted size of the set reachable from the seeds over
    live edges, summed over all 2^E live-edge subsets.
    """
    _check_probability(p)
    seeds = _check_seeds(g, seeds)
    edges = list(g.edges())
    if len(edges) > config.EXACT_SPREAD_MAX_EDGES:
        raise InvalidParameterError(
            f"exact spread needs <= {config.EXACT_SPREAD_MAX_EDGES} edges, graph has {len(edges)}"
        )

    incident: List[List[Tuple[int, int]]] = [[] for _ in range(g.node_count)]
    for i, (u, v) in enumerate(edges):
        incident[u].append((v, i))
        incident[v].append((u, i))

    q = 1.0 - p
    edge_total = len(edges)
    expected = 0.0
    for mask in range(1 << edge_total):
        live = bin(mask).count("1")
        weight = p ** live * q ** (edge_total - live)
        if weight == 0.0:
            continue
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            u = stack.pop()
            for v, i in incident[u]:
                if (mask >> i) & 1 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        expected += weight * len(seen)
    return expected
