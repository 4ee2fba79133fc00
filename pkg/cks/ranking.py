"""
Score tables shared by CKS and the baseline centralities
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from cks.errors import InvalidParameterError


@dataclass(frozen=True, eq=False)
class ScoreTable:
    """Per-node scores plus ranking: descending score, ties by ascending node id"""

    method: str
    scores: np.ndarray
    ranking: np.ndarray

    @classmethod
    def from_scores(cls, method: str, scores) -> "ScoreTable":
        scores = np.asarray(scores, dtype=np.float64)
        ranking = np.lexsort((np.arange(len(scores)), -scores))
        return cls(method=method, scores=scores, ranking=ranking)

    @property
    def node_count(self) -> int:
        return len(self.scores)

    def top(self, k: int) -> List[int]:
        return self.ranking[:k].tolist()


# Baselines return the same structure
CentralityResult = ScoreTable


def select_seeds(t: ScoreTable, k: int) -> List[int]:
    """First k node ids of the ranking"""
    if not 1 <= k <= t.node_count:
        raise InvalidParameterError(f"k must be in 1..{t.node_count}, got {k}")
    return t.top(k)


def seed_count_for_fraction(fraction: float, node_count: int) -> int:
    """k = max(1, round(f * n)); fraction must lie in (0, 1]"""
    if not 0 < fraction <= 1:
        raise InvalidParameterError(f"seed fraction must be in (0, 1], got {fraction}")
    return max(1, int(round(fraction * node_count)))
