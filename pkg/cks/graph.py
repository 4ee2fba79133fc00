"""
Graph data model and edge-list ingestion

Graphs are undirected and simple, with contiguous integer node ids assigned
in first-appearance order of the source labels. Instances are immutable and
safe to share between readers (including worker processes, they pickle).
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from cks.errors import GraphParseError, InvalidParameterError

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph over ids 0..node_count-1"""

    adjacency: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        """Build a graph from id pairs; self-loops and repeats are dropped"""
        if node_count < 0:
            raise InvalidParameterError("node_count must be >= 0")
        neighbor_sets: List[set] = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise InvalidParameterError(f"edge ({u}, {v}) outside 0..{node_count - 1}")
            if u == v:
                continue
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)

        if labels is None:
            labels = [str(i) for i in range(node_count)]
        elif len(labels) != node_count:
            raise InvalidParameterError("labels must match node_count")

        return cls(
            adjacency=tuple(tuple(sorted(s)) for s in neighbor_sets),
            labels=tuple(str(label) for label in labels),
        )

    @property
    def node_count(self) -> int:
        return len(self.adjacency)

    @property
    def original_labels(self) -> Tuple[str, ...]:
        return self.labels

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.node_count)

    @cached_property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    @cached_property
    def _label_index(self) -> dict:
        return {label: i for i, label in enumerate(self.labels)}

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self._check_node(v)
        return self.adjacency[v]

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Each undirected edge once, as (u, v) with u < v, in id order"""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def label_of(self, v: int) -> str:
        self._check_node(v)
        return self.labels[v]

    def id_of(self, label: str) -> int:
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise InvalidParameterError(f"unknown node label: {label!r}") from None

    def subgraph(self, nodes: Sequence[int]) -> Tuple["Graph", np.ndarray]:
        """Induced subgraph on `nodes` plus its local -> global id map"""
        local_to_global = np.asarray(nodes, dtype=np.int64)
        global_to_local = {int(g): i for i, g in enumerate(local_to_global)}
        adjacency = []
        for g in local_to_global:
            adjacency.append(tuple(sorted(
                global_to_local[u] for u in self.adjacency[g] if u in global_to_local
            )))
        labels = tuple(self.labels[g] for g in local_to_global)
        return Graph(adjacency=tuple(adjacency), labels=labels), local_to_global

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.node_count:
            raise InvalidParameterError(f"node id {v} outside 0..{self.node_count - 1}")


# =====================================================
# INGESTION
# =====================================================
def _iter_lines(text: Union[str, IO[str], Iterable[str]]) -> Iterable[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text


def parse_edge_list(
    text: Union[str, IO[str], Iterable[str]],
    directed: bool = False,
    numeric: bool = False,
) -> Graph:
    """
    Parse a SNAP / NetworkRepository style edge list

    Args:
        text: whole file contents, an open text file or any iterable of lines
        directed: input arcs are directed; they are symmetrized either way,
            the flag only records that it happened
        numeric: labels must be integers (normalized, so "07" == "7")

    Returns:
        Graph with labels remapped to contiguous ids in first-appearance order

    Raises:
        GraphParseError: malformed line (with line number) or no edges at all
    """
    label_ids: dict = {}
    labels: List[str] = []
    edges = set()
    self_loops = 0
    duplicates = 0

    def node_id(token: str, line_number: int) -> int:
        if numeric:
            try:
                token = str(int(token))
            except ValueError:
                raise GraphParseError(f"non-numeric node label {token!r}", line_number) from None
        if token not in label_ids:
            label_ids[token] = len(labels)
            labels.append(token)
        return label_ids[token]

    for line_number, raw in enumerate(_iter_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise GraphParseError(f"expected at least 2 tokens, got {len(tokens)}", line_number)

        u = node_id(tokens[0], line_number)
        v = node_id(tokens[1], line_number)
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in edges:
            duplicates += 1
            continue
        edges.add(key)

    if not edges:
        raise GraphParseError("edge list contains no edges")

    if directed:
        logger.info("Directed input symmetrized: every arc kept as an undirected edge")
    if self_loops or duplicates:
        logger.info(f"Dropped {self_loops} self-loop(s) and {duplicates} duplicate edge(s)")

    graph = Graph.from_edges(len(labels), sorted(edges), labels)
    logger.info(f"Parsed graph: {graph.node_count} nodes, {graph.edge_count} edges")
    return graph


def read_edge_list(path: Union[str, Path], directed: bool = False, numeric: bool = False) -> Graph:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return parse_edge_list(f, directed=directed, numeric=numeric)
    except UnicodeDecodeError as e:
        raise GraphParseError(f"input is not valid UTF-8 ({e.reason} at byte {e.start})") from None


def write_edge_list(g: Graph) -> str:
    """Serialize edges as `label label` lines, parseable by parse_edge_list"""
    return "".join(f"{g.labels[u]} {g.labels[v]}\n" for u, v in g.edges())


# =====================================================
# QUERIES
# =====================================================
def degree(g: Graph, v: int) -> int:
    return len(g.neighbors(v))


def bfs_distance_array(g: Graph, source: int) -> np.ndarray:
    """Hop distances from source; -1 marks unreachable nodes"""
    g._check_node(source)
    dist = [-1] * g.node_count
    dist[source] = 0
    queue = deque([source])
    adjacency = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adjacency[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return np.asarray(dist, dtype=np.int64)


def bfs_distances(g: Graph, source: int) -> List[Optional[int]]:
    """Hop distances from source; None for unreachable nodes"""
    return [int(d) if d >= 0 else None for d in bfs_distance_array(g, source)]
