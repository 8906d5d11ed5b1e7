"""Spreader sets and the degree ordering shared by the greedy selectors."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from spreadlab.graph.graph import Graph

REACHED_M = 'reached_m'
NO_FEASIBLE_CANDIDATE = 'no_feasible_candidate'
EXHAUSTED_DEGREE_FILTER = 'exhausted_degree_filter'

CONVERGED_REASONS = (REACHED_M, NO_FEASIBLE_CANDIDATE, EXHAUSTED_DEGREE_FILTER)


@dataclass(frozen=True)
class SeedSet:
    """Distinct spreader ids in selection order, with the reason the selector stopped."""

    nodes: Tuple[int, ...]
    converged_reason: str
    algorithm: str = ''

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError(f"spreaders must be distinct, got {self.nodes}")
        if self.converged_reason not in CONVERGED_REASONS:
            raise ValueError(f"unknown converged_reason {self.converged_reason!r}")

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def prefix(self, m: int) -> 'SeedSet':
        """The first ``m`` spreaders; greedy selectors would have stopped here given m."""
        reason = REACHED_M if m <= len(self.nodes) else self.converged_reason
        return SeedSet(self.nodes[:m], reason, self.algorithm)

    def labels(self, g: Graph) -> list:
        return [g.labels[v] for v in self.nodes]


def degree_order(g: Graph) -> np.ndarray:
    """Node ids by degree descending, ties by ascending id."""
    ids = np.arange(g.node_count)
    return np.lexsort((ids, -g.degrees))
