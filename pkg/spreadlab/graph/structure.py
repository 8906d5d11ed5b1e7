"""Structural decompositions: k-core, connected components, random node removal."""

import logging
import math

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import connected_components

from spreadlab.core.exceptions import DomainError
from spreadlab.graph.graph import Graph, induced_subgraph

logger = logging.getLogger('graph')


def k_core_decomposition(g: Graph) -> np.ndarray:
    """
    Coreness of every node: the largest k such that the node survives in the k-core.

    Returned as a read-only int array indexed by node id.
    """
    core = nx.core_number(g.nx_graph)
    coreness = np.fromiter((core[v] for v in range(g.node_count)), dtype=np.int64, count=g.node_count)
    coreness.setflags(write=False)
    return coreness


def component_labels(g: Graph):
    """(number of components, component index per node)."""
    if g.node_count == 0:
        return 0, np.zeros(0, dtype=np.int64)
    n_components, labels = connected_components(g.csr, directed=False)
    return n_components, labels


def largest_connected_component(g: Graph):
    """
    Subgraph induced by the largest connected component, plus the map back to ids of ``g``.

    Equal-size components are ranked by their smallest node id.
    """
    if g.node_count == 0:
        return g, np.zeros(0, dtype=np.int64)

    n_components, labels = component_labels(g)
    sizes = np.bincount(labels, minlength=n_components)
    smallest_member = np.full(n_components, g.node_count, dtype=np.int64)
    np.minimum.at(smallest_member, labels, np.arange(g.node_count))

    largest = sizes.max()
    candidates = np.flatnonzero(sizes == largest)
    chosen = candidates[np.argmin(smallest_member[candidates])]
    members = np.flatnonzero(labels == chosen)

    if n_components > 1:
        logger.debug(f"LCC keeps {len(members)} of {g.node_count} nodes ({n_components} components)")
    return induced_subgraph(g, members)


def remove_random_nodes(g: Graph, fraction: float, seed: int) -> Graph:
    """
    Drop ``floor(fraction * N)`` uniformly sampled nodes and their edges.

    The result keeps the original labels and carries ``parent_ids`` so seeds
    chosen on it can be mapped back onto ``g``.
    """
    if not 0 <= fraction < 1:
        raise DomainError(f"removal fraction must lie in [0, 1), got {fraction}")
    n_removed = math.floor(fraction * g.node_count)
    rng = np.random.default_rng(seed)
    removed = rng.choice(g.node_count, size=n_removed, replace=False)
    survivors = np.setdiff1d(np.arange(g.node_count), removed)
    subgraph, _ = induced_subgraph(g, survivors)
    logger.debug(f"Removed {n_removed} of {g.node_count} nodes (fraction={fraction}, seed={seed})")
    return subgraph
