"""Immutable undirected simple graph and edge-list ingestion."""

import logging
from functools import cached_property
from typing import Hashable, Iterable, Optional, Sequence, TextIO

import networkx as nx
import numpy as np
import scipy.sparse as sp

from spreadlab.core.exceptions import EdgeListParseError, InvalidNodeError

logger = logging.getLogger('graph')

COMMENT_PREFIXES = ('#', '%')


class Graph:
    """
    Undirected simple graph over dense node ids ``0..node_count-1``.

    ``adjacency[v]`` is the sorted tuple of neighbors of ``v``. ``labels[v]``
    is the label ``v`` had in its source (edge-list token, or the id in the
    graph it was cut from). ``parent_ids`` is set on subgraphs and maps each
    id back to the graph the subgraph was derived from.
    """

    def __init__(
        self,
        adjacency: Sequence[Iterable[int]],
        labels: Optional[Sequence[Hashable]] = None,
        parent_ids: Optional[np.ndarray] = None,
        validate: bool = True,
    ):
        self.adjacency = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)
        self.node_count = len(self.adjacency)
        self.labels = tuple(labels) if labels is not None else tuple(range(self.node_count))
        self.parent_ids = None if parent_ids is None else np.asarray(parent_ids, dtype=np.int64)

        if len(self.labels) != self.node_count:
            raise ValueError(f"got {len(self.labels)} labels for {self.node_count} nodes")
        if validate:
            self._check_simple()

        degrees = np.fromiter((len(nbrs) for nbrs in self.adjacency), dtype=np.int64, count=self.node_count)
        degrees.setflags(write=False)
        self.degrees = degrees
        self.edge_count = int(degrees.sum()) // 2

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple], labels=None, parent_ids=None):
        """Build a graph from (u, v) id pairs; duplicates and self-loops are skipped."""
        adjacency = [set() for _ in range(node_count)]
        for u, v in edges:
            if u == v:
                continue
            adjacency[u].add(v)
            adjacency[v].add(u)
        return cls(adjacency, labels=labels, parent_ids=parent_ids, validate=False)

    def _check_simple(self):
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not 0 <= u < self.node_count:
                    raise InvalidNodeError(u, self.node_count)
                if u == v:
                    raise ValueError(f"self-loop at node {v}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"adjacency is not symmetric: {u} in adj({v}) but not vice versa")

    @cached_property
    def label_map(self) -> dict:
        """Original label -> dense id."""
        return {label: i for i, label in enumerate(self.labels)}

    def check_node(self, v) -> int:
        if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
            raise InvalidNodeError(v, self.node_count)
        if not 0 <= v < self.node_count:
            raise InvalidNodeError(v, self.node_count)
        return int(v)

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[self.check_node(v)]

    def degree(self, v: int) -> int:
        return int(self.degrees[self.check_node(v)])

    def label_of(self, v: int):
        return self.labels[self.check_node(v)]

    def id_of(self, label) -> int:
        try:
            return self.label_map[label]
        except KeyError:
            raise InvalidNodeError(label, self.node_count) from None

    def edges(self):
        """Yield each edge once as (u, v) with u < v."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    @cached_property
    def csr(self) -> sp.csr_array:
        """Symmetric 0/1 adjacency matrix."""
        indptr = np.zeros(self.node_count + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=indptr[1:])
        indices = np.fromiter(
            (u for nbrs in self.adjacency for u in nbrs), dtype=np.int64, count=int(indptr[-1])
        )
        data = np.ones(len(indices), dtype=np.int8)
        return sp.csr_array((data, indices, indptr), shape=(self.node_count, self.node_count))

    @cached_property
    def nx_graph(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.node_count))
        G.add_edges_from(self.edges())
        return G

    def __len__(self):
        return self.node_count

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adjacency == other.adjacency and self.labels == other.labels

    __hash__ = None

    def __repr__(self):
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"


def load_edge_list(
    source: TextIO,
    on_duplicate: str = 'drop',
    on_self_loop: str = 'drop',
    extra_columns: str = 'error',
) -> Graph:
    """
    Parse a whitespace-separated edge list into a simple undirected Graph.

    Labels are mapped to dense ids in order of first appearance. Lines
    starting with '#' or '%' and blank lines are skipped. ``on_duplicate``
    and ``on_self_loop`` are 'drop' (count and log) or 'error';
    ``extra_columns='ignore'`` accepts lines with trailing columns such as
    weights or timestamps.
    """
    for name, value in (('on_duplicate', on_duplicate), ('on_self_loop', on_self_loop)):
        if value not in ('drop', 'error'):
            raise ValueError(f"{name} must be 'drop' or 'error', got {value!r}")
    if extra_columns not in ('error', 'ignore'):
        raise ValueError(f"extra_columns must be 'error' or 'ignore', got {extra_columns!r}")

    label_map = {}
    labels = []
    adjacency = []
    duplicates = 0
    self_loops = 0

    def intern(label):
        node = label_map.get(label)
        if node is None:
            node = len(labels)
            label_map[label] = node
            labels.append(label)
            adjacency.append(set())
        return node

    for line_number, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) != 2 and not (extra_columns == 'ignore' and len(tokens) > 2):
            raise EdgeListParseError(line_number, line)

        u, v = intern(tokens[0]), intern(tokens[1])
        if u == v:
            if on_self_loop == 'error':
                raise EdgeListParseError(line_number, line, reason="self-loop")
            self_loops += 1
            continue
        if v in adjacency[u]:
            if on_duplicate == 'error':
                raise EdgeListParseError(line_number, line, reason="duplicate edge")
            duplicates += 1
            continue
        adjacency[u].add(v)
        adjacency[v].add(u)

    graph = Graph(adjacency, labels=labels, validate=False)
    logger.info(
        f"Loaded edge list: {graph.node_count} nodes, {graph.edge_count} edges "
        f"({duplicates} duplicate edges and {self_loops} self-loops dropped)"
    )
    return graph


def write_edge_list(g: Graph, sink: TextIO):
    """Write ``g`` as an edge list using its original labels."""
    for u, v in g.edges():
        sink.write(f"{g.labels[u]} {g.labels[v]}\n")


def induced_subgraph(g: Graph, nodes: Iterable[int]):
    """
    Node-induced subgraph on ``nodes``.

    Returns the subgraph (dense ids in ascending parent-id order, labels
    inherited from ``g``) and the array mapping subgraph ids back to ids of ``g``.
    """
    keep = np.unique(np.asarray(list(nodes), dtype=np.int64))
    if len(keep) and (keep[0] < 0 or keep[-1] >= g.node_count):
        bad = int(keep[0]) if keep[0] < 0 else int(keep[-1])
        raise InvalidNodeError(bad, g.node_count)
    position = {int(v): i for i, v in enumerate(keep)}
    adjacency = [
        [position[u] for u in g.adjacency[v] if u in position]
        for v in keep.tolist()
    ]
    labels = [g.labels[v] for v in keep.tolist()]
    keep.setflags(write=False)
    return Graph(adjacency, labels=labels, parent_ids=keep, validate=False), keep
