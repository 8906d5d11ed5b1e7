"""Exact expected final AIF on tiny graphs, by expanding every SIR outcome."""

from functools import lru_cache
from itertools import product
from typing import Sequence

from spreadlab.core.exceptions import DomainError
from spreadlab.graph.graph import Graph
from spreadlab.simulation.sir import _check_seed_nodes

EXACT_MAX_NODES = 12


def exact_aif_small(g: Graph, seeds: Sequence[int], beta: float) -> float:
    """
    Expected final AIF of the SIR process, computed without sampling.

    States are (susceptible, infected) bitmasks. From each state the process
    branches over every subset of exposed susceptible nodes that gets
    infected; a node with k infected neighbors is hit with probability
    1 - (1 - beta)**k, independently of the others.
    """
    if g.node_count > EXACT_MAX_NODES:
        raise DomainError(f"exact enumeration supports at most {EXACT_MAX_NODES} nodes, got {g.node_count}")
    if not 0 <= beta <= 1:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    nodes = _check_seed_nodes(g, seeds)

    n = g.node_count
    neighbor_masks = [sum(1 << u for u in g.adjacency[v]) for v in range(n)]
    seed_mask = sum(1 << int(v) for v in nodes)

    @lru_cache(maxsize=None)
    def expected_ever_infected(susceptible: int, infected: int) -> float:
        if not infected:
            return n - bin(susceptible).count('1')
        exposed = []
        for v in range(n):
            if susceptible >> v & 1:
                k = bin(neighbor_masks[v] & infected).count('1')
                if k:
                    exposed.append((v, 1.0 - (1.0 - beta) ** k))

        total = 0.0
        for outcome in product((False, True), repeat=len(exposed)):
            probability = 1.0
            newly = 0
            for (v, p), hit in zip(exposed, outcome):
                probability *= p if hit else 1.0 - p
                if hit:
                    newly |= 1 << v
            if probability == 0.0:
                continue
            total += probability * expected_ever_infected(susceptible & ~newly, newly)
        return total

    everyone = (1 << n) - 1
    return expected_ever_infected(everyone & ~seed_mask, seed_mask) / n
