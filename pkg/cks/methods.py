"""
Ranking methods by name

Everything the CLI, the sweeps and the HTTP service rank with goes through
score_method, so a new centrality only needs an entry in METHODS.
"""

from typing import Callable, Dict, Optional

from cks.baselines import betweenness, closeness, degree_centrality, enc, kshell_centrality
from cks.errors import InvalidParameterError
from cks.graph import Graph
from cks.ranking import ScoreTable
from cks.scoring import rank

METHODS: Dict[str, Callable[..., ScoreTable]] = {
    "cks": lambda g, opts: rank(
        g,
        rng_seed=opts["seed"],
        resolution=opts["resolution"],
        exclude_own_community=opts["exclude_own_community"],
        threads=opts["threads"],
    ),
    "bc": lambda g, opts: betweenness(g, threads=opts["threads"]),
    "cc": lambda g, opts: closeness(g),
    "enc": lambda g, opts: enc(g, mode=opts["enc_mode"]),
    "degree": lambda g, opts: degree_centrality(g),
    "kshell": lambda g, opts: kshell_centrality(g),
}

# Methods whose scoring time includes Louvain
COMMUNITY_METHODS = frozenset({"cks"})


def score_method(
    g: Graph,
    method: str,
    seed: int = 0,
    resolution: float = 1.0,
    exclude_own_community: bool = False,
    enc_mode: str = "extended",
    threads: Optional[int] = 1,
) -> ScoreTable:
    try:
        scorer = METHODS[method]
    except KeyError:
        raise InvalidParameterError(
            f"unknown method {method!r}, expected one of {sorted(METHODS)}"
        ) from None
    opts = {
        "seed": seed,
        "resolution": resolution,
        "exclude_own_community": exclude_own_community,
        "enc_mode": enc_mode,
        "threads": threads,
    }
    return scorer(g, opts)
