"""Descriptive network statistics: size, degree moments, distance, clustering."""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import shortest_path

from spreadlab.core.config import config
from spreadlab.core.exceptions import DomainError
from spreadlab.graph.graph import Graph
from spreadlab.graph.structure import component_labels, largest_connected_component

logger = logging.getLogger('graph')

# Sources per shortest_path call; bounds the dense distance block in memory
_SOURCE_CHUNK = 256

STATS_HEADER = ['name', 'N', 'E', 'avg_k', 'avg_d', 'C', 'beta_c', 'distance_mode', 'distance_on_lcc']


@dataclass(frozen=True)
class NetworkStats:
    n_nodes: int
    n_edges: int
    avg_degree: float
    avg_distance: float
    clustering_coefficient: float
    epidemic_threshold: float
    distance_mode: str = 'exact'
    distance_on_lcc: bool = False

    def as_row(self, name: str) -> list:
        return [
            name, self.n_nodes, self.n_edges, self.avg_degree, self.avg_distance,
            self.clustering_coefficient, self.epidemic_threshold,
            self.distance_mode, int(self.distance_on_lcc),
        ]


def epidemic_threshold(degrees: np.ndarray) -> float:
    """beta_c = <k> / <k^2>."""
    k = np.asarray(degrees, dtype=float)
    second_moment = np.mean(k ** 2)
    if second_moment == 0:
        return float('nan')
    return float(np.mean(k) / second_moment)


def _distance_sum(csr, sources) -> tuple:
    """(sum of hop distances, number of pairs) from ``sources`` to every other node."""
    total = 0.0
    pairs = 0
    for start in range(0, len(sources), _SOURCE_CHUNK):
        block = shortest_path(
            csr, method='D', directed=False, unweighted=True,
            indices=sources[start:start + _SOURCE_CHUNK],
        )
        finite = np.isfinite(block) & (block > 0)
        total += float(block[finite].sum())
        pairs += int(finite.sum())
    return total, pairs


def average_distance(g: Graph, mode: str = 'exact', sample_sources: int = 1000, seed: int = 0) -> float:
    """
    Mean hop distance over ordered pairs of distinct nodes of a connected graph.

    ``mode='sampled'`` averages over BFS trees from ``sample_sources``
    uniformly drawn sources instead of all nodes.
    """
    if g.node_count < 2:
        return 0.0
    if mode == 'exact':
        sources = np.arange(g.node_count)
    elif mode == 'sampled':
        rng = np.random.default_rng(seed)
        sources = np.sort(rng.choice(g.node_count, size=min(sample_sources, g.node_count), replace=False))
    else:
        raise DomainError(f"distance mode must be 'exact' or 'sampled', got {mode!r}")
    total, pairs = _distance_sum(g.csr, sources)
    return total / pairs if pairs else 0.0


def network_stats(g: Graph, distance_mode: str = 'auto', sample_sources: int = None, seed: int = 0) -> NetworkStats:
    """
    Table-style statistics of ``g``.

    ``distance_mode`` is 'exact', 'sampled' or 'auto' (exact up to
    ``config.exact_distance_max_nodes`` nodes, sampled above). When ``g`` is
    disconnected, <d> is measured on its largest connected component and
    ``distance_on_lcc`` is set. Nodes with degree < 2 contribute 0 to C.
    """
    if g.node_count == 0:
        raise DomainError("network statistics are undefined for an empty graph")

    if sample_sources is None:
        sample_sources = config.sampled_distance_sources
    if distance_mode == 'auto':
        distance_mode = 'exact' if g.node_count <= config.exact_distance_max_nodes else 'sampled'

    n_components, _ = component_labels(g)
    distance_graph = g
    if n_components > 1:
        distance_graph, _ = largest_connected_component(g)
        logger.info(f"Graph has {n_components} components, measuring <d> on the LCC ({distance_graph.node_count} nodes)")

    avg_d = average_distance(distance_graph, mode=distance_mode, sample_sources=sample_sources, seed=seed)
    label = 'exact' if distance_mode == 'exact' else f"sampled(k={min(sample_sources, distance_graph.node_count)},seed={seed})"

    return NetworkStats(
        n_nodes=g.node_count,
        n_edges=g.edge_count,
        avg_degree=2.0 * g.edge_count / g.node_count,
        avg_distance=avg_d,
        clustering_coefficient=float(nx.average_clustering(g.nx_graph)),
        epidemic_threshold=epidemic_threshold(g.degrees),
        distance_mode=label,
        distance_on_lcc=n_components > 1,
    )
