"""
Evaluation metrics: ASPL among seeds, FIS sweeps and method timing

Sweeps use common random numbers: grid point i always runs with master seed
cfg.master_seed + i, so curves of different methods are directly comparable.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from cks.diffusion import DiffusionConfig, monte_carlo
from cks.errors import InvalidParameterError
from cks.graph import Graph, bfs_distance_array
from cks.methods import COMMUNITY_METHODS, score_method
from cks.ranking import ScoreTable, seed_count_for_fraction

logger = logging.getLogger(__name__)


# =====================================================
# ASPL AMONG SEEDS
# =====================================================
@dataclass(frozen=True)
class AsplResult:
    seed_count: int
    reachable_pairs: int
    unreachable_pairs: int
    total_distance: int

    @property
    def defined(self) -> bool:
        return self.reachable_pairs > 0

    @property
    def mean(self) -> Optional[float]:
        """Mean distance over reachable pairs; None when no pair is reachable"""
        if not self.defined:
            return None
        return self.total_distance / self.reachable_pairs


def aspl_among_seeds(g: Graph, seeds: Sequence[int]) -> AsplResult:
    """Average shortest-path length over unordered seed pairs"""
    unique = list(dict.fromkeys(int(s) for s in seeds))
    if len(unique) < 2:
        raise InvalidParameterError("ASPL needs at least 2 distinct seeds")

    reachable = unreachable = total = 0
    for i, s in enumerate(unique[:-1]):
        dist = bfs_distance_array(g, s)
        for t in unique[i + 1:]:
            d = int(dist[t])
            if d < 0:
                unreachable += 1
            else:
                reachable += 1
                total += d
    return AsplResult(
        seed_count=len(unique),
        reachable_pairs=reachable,
        unreachable_pairs=unreachable,
        total_distance=total,
    )


# =====================================================
# SWEEPS
# =====================================================
@dataclass(frozen=True)
class SweepPoint:
    grid_value: float
    seed_count: int
    mean_fis: float
    std_fis: float
    runs: int


@dataclass(frozen=True)
class SweepResult:
    method: str
    variable: str
    points: Tuple[SweepPoint, ...] = field(default_factory=tuple)

    @property
    def grid(self) -> List[float]:
        return [point.grid_value for point in self.points]

    def rows(self) -> List[Dict[str, object]]:
        return [
            {
                "method": self.method,
                "grid_var": self.variable,
                "grid_value": point.grid_value,
                "mean_fis": point.mean_fis,
                "std_fis": point.std_fis,
                "runs": point.runs,
            }
            for point in self.points
        ]


def parse_grid(text: str) -> List[float]:
    """'start:stop:step' (stop included) or a comma separated list"""
    text = text.strip()
    try:
        if ":" not in text:
            return [float(part) for part in text.split(",") if part.strip()]
        start, stop, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise InvalidParameterError(f"cannot parse grid {text!r}") from None

    if step <= 0 or stop < start:
        raise InvalidParameterError(f"bad grid range {text!r}")
    # stop is inclusive, never overshot
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(count)]


def _check_grid(grid: Sequence[float], low: float, low_inclusive: bool, name: str) -> List[float]:
    grid = [float(x) for x in grid]
    if not grid:
        raise InvalidParameterError(f"{name} grid is empty")
    for x in grid:
        below = x < low if low_inclusive else x <= low
        if below or x > 1.0:
            bound = "[" if low_inclusive else "("
            raise InvalidParameterError(f"{name} value {x} outside {bound}{low}, 1]")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParameterError(f"{name} grid must be strictly increasing")
    return grid


def _point_config(cfg: DiffusionConfig, index: int, p: Optional[float] = None) -> DiffusionConfig:
    update: Dict[str, object] = {"master_seed": cfg.master_seed + index}
    if p is not None:
        update["activation_probability"] = p
    return cfg.model_copy(update=update)


def sweep_fraction(
    g: Graph,
    table: ScoreTable,
    fractions: Sequence[float],
    cfg: DiffusionConfig,
    threads: Optional[int] = 1,
) -> SweepResult:
    """FIS for the top max(1, round(f*n)) nodes of the ranking, per fraction f"""
    fractions = _check_grid(fractions, 0.0, False, "seed fraction")
    points = []
    for i, fraction in enumerate(fractions):
        k = seed_count_for_fraction(fraction, g.node_count)
        outcome = monte_carlo(g, table.top(k), _point_config(cfg, i), threads)
        points.append(SweepPoint(fraction, k, outcome.mean_fis, outcome.std_fis, outcome.runs))
    return SweepResult(method=table.method, variable="seed_fraction", points=tuple(points))


def sweep_p(
    g: Graph,
    table: ScoreTable,
    ps: Sequence[float],
    seed_fraction: float,
    cfg: DiffusionConfig,
    threads: Optional[int] = 1,
) -> SweepResult:
    """FIS for a fixed seed set while the activation probability varies"""
    ps = _check_grid(ps, 0.0, True, "activation probability")
    k = seed_count_for_fraction(seed_fraction, g.node_count)
    seeds = table.top(k)
    points = []
    for i, p in enumerate(ps):
        outcome = monte_carlo(g, seeds, _point_config(cfg, i, p), threads)
        points.append(SweepPoint(p, k, outcome.mean_fis, outcome.std_fis, outcome.runs))
    return SweepResult(method=table.method, variable="p", points=tuple(points))


# =====================================================
# TIMING
# =====================================================
@dataclass(frozen=True)
class TimingResult:
    method: str
    seconds: float
    includes_community_detection: bool


def time_method(
    g: Graph,
    method: Union[str, Callable[[Graph], object]],
    **options,
) -> TimingResult:
    """Wall-clock time of the scoring phase only, millisecond resolution"""
    if callable(method):
        name = getattr(method, "__name__", "custom")
        run = lambda: method(g)  # noqa: E731
    else:
        name = method
        run = lambda: score_method(g, method, **options)  # noqa: E731

    started = time.perf_counter()
    run()
    seconds = round(time.perf_counter() - started, 3)
    logger.info(f"⏱️  {name}: {seconds:.3f}s on {g.node_count} nodes")
    return TimingResult(
        method=name,
        seconds=seconds,
        includes_community_detection=name in COMMUNITY_METHODS,
    )
