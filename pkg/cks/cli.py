"""
Command-line front end

    python -m cks rank     --input g.txt --method cks --seed 42 --top 10 --out scores.csv
    python -m cks seeds    --input g.txt --method cks --seed 42 --fraction 0.05 --out seeds.txt
    python -m cks simulate --input g.txt --seeds-file seeds.txt --p 0.1 --runs 100 --seed 7
    python -m cks sweep    --input g.txt --method cks --sweep p --grid 0.1:0.9:0.1 --fraction 0.2 --seed 7
    python -m cks aspl     --input g.txt --seeds-file seeds.txt
    python -m cks bench    --input g.txt --methods cks,bc,cc,enc

Exit codes: 0 success, 1 input could not be read or parsed, 2 invalid parameters.
Every artifact is accompanied by <artifact>.manifest.json.
"""

import argparse
import logging
import os
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError, model_validator

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config
from cks.community import louvain
from cks.coreness import community_kshell, kshell
from cks.diffusion import DiffusionConfig, monte_carlo
from cks.errors import GraphParseError, InvalidParameterError
from cks.graph import Graph, read_edge_list
from cks.methods import COMMUNITY_METHODS, METHODS, score_method
from cks.metrics import aspl_among_seeds, parse_grid, sweep_fraction, sweep_p, time_method
from cks.output import atomic_write_text, build_manifest, format_score, write_manifest, write_table
from cks.parallel import default_threads
from cks.ranking import ScoreTable, seed_count_for_fraction, select_seeds
from cks.scoring import rank_detailed

logger = logging.getLogger("cks")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PARAMETERS = 2

DEFAULT_OUTPUTS = {
    "rank": "scores.csv",
    "seeds": "seeds.txt",
    "simulate": "runs.csv",
    "sweep": "sweep.csv",
    "aspl": "aspl.csv",
    "bench": "bench.csv",
}
SEEDED_COMMANDS = ("rank", "simulate", "sweep")


# =====================================================
# EXPERIMENT SPEC
# =====================================================
class ExperimentSpec(BaseModel):
    command: Literal["rank", "seeds", "simulate", "sweep", "aspl", "bench"]
    input: Path
    method: str = "cks"
    methods: List[str] = Field(default_factory=lambda: list(METHODS))
    k: Optional[int] = Field(None, ge=1)
    fraction: Optional[float] = Field(None, gt=0.0, le=1.0)
    top: Optional[int] = Field(None, ge=1)
    p: Optional[float] = Field(None, ge=0.0, le=1.0)
    grid: Optional[List[float]] = None
    sweep: Optional[Literal["p", "fraction"]] = None
    runs: int = Field(config.DEFAULT_RUNS, ge=1)
    seed: Optional[int] = Field(None, ge=0)
    resolution: float = Field(config.DEFAULT_RESOLUTION, gt=0.0)
    out: Optional[Path] = None
    seeds_file: Optional[Path] = None
    communities: Optional[Path] = None
    shells: Optional[Path] = None
    exclude_own_community: bool = False
    enc_mode: Literal["extended", "basic"] = "extended"
    directed: bool = False
    numeric: bool = False
    threads: int = Field(default_factory=default_threads, ge=1)
    format: Literal["csv", "json"] = "csv"

    @model_validator(mode="after")
    def check_combinations(self) -> "ExperimentSpec":
        if self.command in SEEDED_COMMANDS and self.seed is None:
            raise ValueError(f"--seed is required for {self.command}")
        for name in [self.method] + (self.methods if self.command == "bench" else []):
            if name not in METHODS:
                raise ValueError(f"unknown method {name!r}, expected one of {sorted(METHODS)}")

        needs_seed_count = self.command == "seeds" or (
            self.command in ("simulate", "aspl") and self.seeds_file is None
        )
        if needs_seed_count and (self.k is None) == (self.fraction is None):
            raise ValueError("exactly one of --k / --fraction is required")
        if self.seeds_file is not None and (self.k is not None or self.fraction is not None):
            raise ValueError("--seeds-file excludes --k / --fraction")

        if self.command == "simulate" and self.grid is not None:
            raise ValueError("simulate takes --p, not --grid")
        if self.command == "sweep":
            if self.grid is None or self.sweep is None:
                raise ValueError("sweep needs --sweep and --grid")
            if self.sweep == "p" and self.p is not None:
                raise ValueError("--sweep p takes its values from --grid, not --p")
            if self.sweep == "p" and self.k is not None and self.fraction is not None:
                raise ValueError("--sweep p takes one of --k / --fraction")
            if self.sweep == "fraction" and (self.fraction is not None or self.k is not None):
                raise ValueError("--sweep fraction takes its values from --grid, not --fraction/--k")
        if (self.communities or self.shells) and self.command != "rank":
            raise ValueError("--communities/--shells are only written by rank")
        return self

    @property
    def output(self) -> Path:
        return self.out or Path(DEFAULT_OUTPUTS[self.command])

    @property
    def seed_value(self) -> int:
        return self.seed if self.seed is not None else 0


# =====================================================
# HELPERS
# =====================================================
def read_seed_labels(path: Path) -> List[str]:
    """One label per line (first token); blank lines and #/% comments skipped"""
    labels = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith(("#", "%")):
                labels.append(line.split()[0])
    return labels


class _Stopwatch:
    def __init__(self):
        self.timings: Dict[str, float] = {}

    @contextmanager
    def measure(self, name: str):
        started = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = time.perf_counter() - started


def _table(g: Graph, spec: ExperimentSpec) -> ScoreTable:
    return score_method(
        g,
        spec.method,
        seed=spec.seed_value,
        resolution=spec.resolution,
        exclude_own_community=spec.exclude_own_community,
        enc_mode=spec.enc_mode,
        threads=spec.threads,
    )


def _seed_ids(g: Graph, spec: ExperimentSpec, watch: _Stopwatch) -> List[int]:
    if spec.seeds_file is not None:
        return [g.id_of(label) for label in read_seed_labels(spec.seeds_file)]
    with watch.measure("score"):
        table = _table(g, spec)
    k = spec.k if spec.k is not None else seed_count_for_fraction(spec.fraction, g.node_count)
    return select_seeds(table, k)


def _finish(
    spec: ExperimentSpec,
    watch: _Stopwatch,
    outputs: Sequence[Path],
    extra: Optional[dict] = None,
) -> None:
    manifest = build_manifest(
        command=spec.command,
        parameters=spec.model_dump(mode="json"),
        timings=watch.timings,
        outputs=[str(path) for path in outputs],
        extra=extra,
    )
    for path in outputs:
        write_manifest(path, manifest)
    logger.info(f"✅ {spec.command}: wrote {', '.join(str(path) for path in outputs)}")


# =====================================================
# SUBCOMMANDS
# =====================================================
def cmd_rank(g: Graph, spec: ExperimentSpec, watch: _Stopwatch) -> None:
    outputs = [spec.output]
    detail = None
    with watch.measure("score"):
        if spec.method == "cks":
            detail = rank_detailed(
                g, spec.seed_value, spec.resolution, spec.exclude_own_community, threads=spec.threads
            )
            table = detail.table
        else:
            table = _table(g, spec)

    count = min(spec.top or g.node_count, g.node_count)
    rows = [
        [position, g.labels[v], format_score(table.scores[v])]
        for position, v in enumerate(table.top(count), start=1)
    ]
    write_table(spec.output, ["rank", "node_label", "score"], rows, spec.format)

    if spec.communities or spec.shells:
        if detail is not None:
            partition, shells = detail.partition, detail.community_shells
        else:
            partition = louvain(g, spec.seed_value, spec.resolution)
            shells = community_kshell(g, partition, spec.threads)
        if spec.communities:
            rows = [[g.labels[v], int(partition.assignment[v])] for v in range(g.node_count)]
            write_table(spec.communities, ["node_label", "community_id"], rows, spec.format)
            outputs.append(spec.communities)
        if spec.shells:
            global_shells = kshell(g).shell
            rows = [
                [g.labels[v], int(partition.assignment[v]), int(shells.shell[v]), int(global_shells[v])]
                for v in range(g.node_count)
            ]
            header = ["node_label", "community_id", "community_shell", "global_shell"]
            write_table(spec.shells, header, rows, spec.format)
            outputs.append(spec.shells)

    _finish(spec, watch, outputs, {
        "timing_includes_community_detection": spec.method in COMMUNITY_METHODS,
    })


def cmd_seeds(g: Graph, spec: ExperimentSpec, watch: _Stopwatch) -> None:
    seeds = _seed_ids(g, spec, watch)
    if spec.format == "json":
        rows = [[position, g.labels[v]] for position, v in enumerate(seeds, start=1)]
        write_table(spec.output, ["rank", "node_label"], rows, "json")
    else:
        lines = [f"# method={spec.method} seeds={len(seeds)}"] + [g.labels[v] for v in seeds]
        atomic_write_text(spec.output, "\n".join(lines) + "\n")
    _finish(spec, watch, [spec.output])


def cmd_simulate(g: Graph, spec: ExperimentSpec, watch: _Stopwatch) -> None:
    seeds = _seed_ids(g, spec, watch)
    cfg = DiffusionConfig(
        activation_probability=spec.p if spec.p is not None else config.DEFAULT_P,
        runs=spec.runs,
        master_seed=spec.seed_value,
    )
    with watch.measure("simulate"):
        outcome = monte_carlo(g, seeds, cfg, spec.threads)

    fis = outcome.fis
    rows = [[run, int(count), format_score(fis[run])] for run, count in enumerate(outcome.counts)]
    std_infected = outcome.std_fis * g.node_count
    rows.append(["mean", format_score(outcome.mean_infected), format_score(outcome.mean_fis)])
    rows.append(["std", format_score(std_infected), format_score(outcome.std_fis)])
    write_table(spec.output, ["run", "infected", "fis"], rows, spec.format)
    _finish(spec, watch, [spec.output], {"seed_count": outcome.seed_count})


def cmd_sweep(g: Graph, spec: ExperimentSpec, watch: _Stopwatch) -> None:
    with watch.measure("score"):
        table = _table(g, spec)
    cfg = DiffusionConfig(
        activation_probability=spec.p if spec.p is not None else config.DEFAULT_P,
        runs=spec.runs,
        master_seed=spec.seed_value,
    )
    with watch.measure("simulate"):
        if spec.sweep == "p":
            fraction = spec.fraction if spec.fraction is not None else config.DEFAULT_SWEEP_FRACTION
            if spec.k is not None:
                fraction = spec.k / g.node_count
            result = sweep_p(g, table, spec.grid, fraction, cfg, spec.threads)
        else:
            result = sweep_fraction(g, table, spec.grid, cfg, spec.threads)

    header = ["method", "grid_var", "grid_value", "mean_fis", "std_fis", "runs"]
    rows = [
        [row["method"], row["grid_var"], row["grid_value"],
         format_score(row["mean_fis"]), format_score(row["std_fis"]), row["runs"]]
        for row in result.rows()
    ]
    write_table(spec.output, header, rows, spec.format)
    _finish(spec, watch, [spec.output])


def cmd_aspl(g: Graph, spec: ExperimentSpec, watch: _Stopwatch) -> None:
    seeds = _seed_ids(g, spec, watch)
    with watch.measure("aspl"):
        result = aspl_among_seeds(g, seeds)
    source = "seeds-file" if spec.seeds_file is not None else spec.method
    mean = format_score(result.mean) if result.defined else "undefined"
    rows = [[source, result.seed_count, result.reachable_pairs, result.unreachable_pairs, mean]]
    header = ["source", "seed_count", "reachable_pairs", "unreachable_pairs", "aspl"]
    write_table(spec.output, header, rows, spec.format)
    _finish(spec, watch, [spec.output])


def cmd_bench(g: Graph, spec: ExperimentSpec, watch: _Stopwatch) -> None:
    rows = []
    for method in spec.methods:
        timing = time_method(
            g, method,
            seed=spec.seed_value,
            resolution=spec.resolution,
            exclude_own_community=spec.exclude_own_community,
            enc_mode=spec.enc_mode,
            threads=spec.threads,
        )
        watch.timings[method] = timing.seconds
        rows.append([method, f"{timing.seconds:.3f}", str(timing.includes_community_detection).lower()])
    write_table(spec.output, ["method", "seconds", "includes_community_detection"], rows, spec.format)
    _finish(spec, watch, [spec.output])


HANDLERS = {
    "rank": cmd_rank,
    "seeds": cmd_seeds,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "aspl": cmd_aspl,
    "bench": cmd_bench,
}


def run(spec: ExperimentSpec) -> int:
    """Execute one subcommand; returns the process exit code"""
    watch = _Stopwatch()
    try:
        with watch.measure("parse"):
            g = read_edge_list(spec.input, directed=spec.directed, numeric=spec.numeric)
    except (GraphParseError, OSError) as e:
        logger.error(f"❌ Cannot read {spec.input}: {e}")
        return EXIT_INPUT

    try:
        HANDLERS[spec.command](g, spec, watch)
    except (InvalidParameterError, ValidationError) as e:
        logger.error(f"❌ Invalid parameters: {e}")
        return EXIT_PARAMETERS
    except (GraphParseError, OSError) as e:
        logger.error(f"❌ Cannot read input: {e}")
        return EXIT_INPUT
    return EXIT_OK


# =====================================================
# ARGUMENT PARSING
# =====================================================
def _grid_arg(text: str) -> List[float]:
    try:
        return parse_grid(text)
    except InvalidParameterError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _methods_arg(text: str) -> List[str]:
    return [name.strip() for name in text.split(",") if name.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, type=Path, help="edge list file")
    common.add_argument("--out", type=Path, help="output file (default depends on the subcommand)")
    common.add_argument("--seed", type=int, help="master seed (Louvain order and IC streams)")
    common.add_argument("--method", default="cks", help=f"one of {', '.join(METHODS)}")
    common.add_argument("--resolution", type=float, default=config.DEFAULT_RESOLUTION)
    common.add_argument("--exclude-own-community", action="store_true",
                        help="CKS: skip the node's own community in the score sum")
    common.add_argument("--enc-mode", choices=["extended", "basic"], default="extended")
    common.add_argument("--directed", action="store_true", help="input arcs are directed (symmetrized)")
    common.add_argument("--numeric", action="store_true", help="node labels must be integers")
    common.add_argument("--threads", type=int, help="worker processes (default: all cores)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-q", "--quiet", action="store_true")

    seeding = argparse.ArgumentParser(add_help=False)
    seeding.add_argument("--k", type=int, help="number of seeds")
    seeding.add_argument("--fraction", type=float, help="seeds as a fraction of the nodes")
    seeding.add_argument("--seeds-file", type=Path, help="seed labels, one per line")

    parser = argparse.ArgumentParser(prog="cks", description="CKS centrality for influence maximization")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", parents=[common], help="rank nodes by a centrality")
    p_rank.add_argument("--top", type=int, help="write only the first K rows")
    p_rank.add_argument("--communities", type=Path, help="dump node_label,community_id")
    p_rank.add_argument("--shells", type=Path, help="dump community and global shells")

    sub.add_parser("seeds", parents=[common, seeding], help="write the top seeds of a ranking")

    p_sim = sub.add_parser("simulate", parents=[common, seeding], help="Monte-Carlo Independent Cascade")
    p_sim.add_argument("--p", type=float, default=config.DEFAULT_P, help="activation probability")
    p_sim.add_argument("--runs", type=int, default=config.DEFAULT_RUNS)

    p_sweep = sub.add_parser("sweep", parents=[common], help="FIS over a grid of p or seed fractions")
    p_sweep.add_argument("--sweep", choices=["p", "fraction"], required=True)
    p_sweep.add_argument("--grid", type=_grid_arg, required=True, help="start:stop:step or a,b,c")
    p_sweep.add_argument("--p", type=float, help="fixed p for --sweep fraction")
    p_sweep.add_argument("--fraction", type=float, help="fixed seed fraction for --sweep p")
    p_sweep.add_argument("--k", type=int, help="fixed seed count for --sweep p")
    p_sweep.add_argument("--runs", type=int, default=config.DEFAULT_RUNS)

    sub.add_parser("aspl", parents=[common, seeding], help="ASPL among seeds")

    p_bench = sub.add_parser("bench", parents=[common], help="time the scoring phase of methods")
    p_bench.add_argument("--methods", type=_methods_arg, default=list(METHODS))

    return parser


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    fields = {name: value for name, value in vars(args).items()
              if name in ExperimentSpec.model_fields and value is not None}
    return ExperimentSpec(**fields)


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else config.LOG_LEVEL
    logging.basicConfig(level=level, format=config.LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        spec = spec_from_args(args)
    except ValidationError as e:
        logger.error(f"❌ Invalid parameters: {e}")
        return EXIT_PARAMETERS
    return run(spec)
