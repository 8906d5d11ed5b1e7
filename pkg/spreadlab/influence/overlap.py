"""
Influence calculus for a spreader set.

A spreader at distance d in {1, 2, 3} from a non-spreader exerts influence
beta**d on it; spreaders farther away exert none. Spreaders in the same
neighbor order combine as independent trials, and the three orders add up
to the total influence I(v). Whatever part of I(v) exceeds 1 is redundant.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Set

import numpy as np

from spreadlab.core.config import config
from spreadlab.core.exceptions import DomainError, DuplicateSeedError
from spreadlab.graph.graph import Graph
from spreadlab.graph.traversal import bounded_bfs

logger = logging.getLogger('influence')

ORDERS = np.arange(1, config.influence_range + 1)


def check_beta(beta: float) -> float:
    if not 0 < beta <= 1:
        raise DomainError(f"beta must lie in (0, 1], got {beta}")
    return float(beta)


def pair_influence(distance: int, beta: float) -> float:
    """beta**distance within the influence range, 0 beyond it."""
    check_beta(beta)
    if distance < 0:
        raise DomainError(f"distance must be >= 0, got {distance}")
    if distance > config.influence_range:
        return 0.0
    return beta ** distance


def total_influence(n1: int, n2: int, n3: int, beta: float) -> float:
    """I = [1-(1-b)^n1] + [1-(1-b^2)^n2] + [1-(1-b^3)^n3]."""
    check_beta(beta)
    if min(n1, n2, n3) < 0:
        raise DomainError(f"spreader counts must be >= 0, got {(n1, n2, n3)}")
    return (
        (1.0 - (1.0 - beta) ** n1)
        + (1.0 - (1.0 - beta ** 2) ** n2)
        + (1.0 - (1.0 - beta ** 3) ** n3)
    )


def redundant_influence(n1: int, n2: int, n3: int, beta: float) -> float:
    """max(0, I - 1)."""
    return max(0.0, total_influence(n1, n2, n3, beta) - 1.0)


def influence_rows(counts: np.ndarray, beta: float) -> np.ndarray:
    """Total influence for each (n1, n2, n3) row of ``counts``."""
    counts = np.asarray(counts, dtype=np.int64).reshape(-1, len(ORDERS))
    per_order = 1.0 - (1.0 - beta ** ORDERS) ** counts
    # same summation order as total_influence
    return per_order[:, 0] + per_order[:, 1] + per_order[:, 2]


class ExposureCounts:
    """
    Per-node counts of spreaders at distance exactly 1, 2 and 3.

    Counts are kept for every node so a seed can be withdrawn again; seeds
    themselves are hidden from lookups and iteration.
    """

    def __init__(self, node_count: int):
        self.node_count = node_count
        self.counts = np.zeros((node_count, len(ORDERS)), dtype=np.int64)
        self.is_seed = np.zeros(node_count, dtype=bool)
        self.seeds: List[int] = []

    def copy(self) -> 'ExposureCounts':
        other = ExposureCounts(self.node_count)
        other.counts = self.counts.copy()
        other.is_seed = self.is_seed.copy()
        other.seeds = list(self.seeds)
        return other

    def _shift(self, g: Graph, seed: int, delta: int) -> Set[int]:
        touched = set()
        for u, d in bounded_bfs(g, seed, config.influence_range).items():
            if d == 0:
                continue
            self.counts[u, d - 1] += delta
            if not self.is_seed[u]:
                touched.add(u)
        return touched

    def add_seed(self, g: Graph, seed: int) -> Set[int]:
        """Register ``seed`` and return the non-seed nodes whose counts grew."""
        seed = g.check_node(seed)
        if self.is_seed[seed]:
            raise DuplicateSeedError(seed)
        self.is_seed[seed] = True
        self.seeds.append(seed)
        return self._shift(g, seed, +1)

    def remove_seed(self, g: Graph, seed: int) -> Set[int]:
        """Withdraw a previously added seed and return the non-seed nodes whose counts shrank."""
        seed = g.check_node(seed)
        if not self.is_seed[seed]:
            raise ValueError(f"node {seed} is not a spreader")
        self.is_seed[seed] = False
        self.seeds.remove(seed)
        touched = self._shift(g, seed, -1)
        touched.add(seed)
        return touched

    def __getitem__(self, v: int) -> tuple:
        if self.is_seed[v]:
            raise KeyError(f"node {v} is a spreader and has no exposure entry")
        return tuple(int(c) for c in self.counts[v])

    def __contains__(self, v) -> bool:
        return 0 <= v < self.node_count and not self.is_seed[v]

    def non_seed_nodes(self) -> np.ndarray:
        return np.flatnonzero(~self.is_seed)

    def as_rows(self):
        """Yield (node, n1, n2, n3) for every non-seed node in id order."""
        for v in self.non_seed_nodes().tolist():
            yield (v, *self[v])

    def __eq__(self, other):
        if not isinstance(other, ExposureCounts):
            return NotImplemented
        mask = ~self.is_seed
        return (
            np.array_equal(self.is_seed, other.is_seed)
            and np.array_equal(self.counts[mask], other.counts[mask])
        )

    __hash__ = None


def _check_seeds(g: Graph, seeds: Iterable[int]) -> List[int]:
    seeds = [g.check_node(s) for s in seeds]
    if len(set(seeds)) != len(seeds):
        raise DomainError(f"spreaders must be distinct, got {seeds}")
    return seeds


def exposure_counts(g: Graph, seeds: Sequence[int]) -> ExposureCounts:
    """(n1, n2, n3) for every non-seed node, from a depth-3 BFS out of each seed."""
    counts = ExposureCounts(g.node_count)
    for s in _check_seeds(g, seeds):
        counts.add_seed(g, s)
    return counts


def incremental_exposure_update(counts: ExposureCounts, g: Graph, new_seed: int):
    """
    Copy of ``counts`` with ``new_seed`` added, plus the non-seed nodes it touched.

    Only nodes within distance 3 of ``new_seed`` change, so those are the
    only places where influence can have grown.
    """
    updated = counts.copy()
    touched = updated.add_seed(g, new_seed)
    return updated, touched


@dataclass
class RiReport:
    beta: float
    nodes: np.ndarray
    counts: np.ndarray
    total_influence: np.ndarray
    redundant_influence: np.ndarray
    total_ri: float
    violating_nodes: List[int] = field(default_factory=list)

    def rows(self):
        """(node, n1, n2, n3, I, RI) per non-spreader, in node id order."""
        for i, v in enumerate(self.nodes.tolist()):
            n1, n2, n3 = (int(c) for c in self.counts[i])
            yield v, n1, n2, n3, float(self.total_influence[i]), float(self.redundant_influence[i])


def ri_report(g: Graph, seeds: Sequence[int], beta: float) -> RiReport:
    """Total and redundant influence on every non-spreader of ``g``."""
    check_beta(beta)
    counts = exposure_counts(g, seeds)
    nodes = counts.non_seed_nodes()
    rows = counts.counts[nodes]
    influence = influence_rows(rows, beta)
    redundant = np.maximum(0.0, influence - 1.0)
    violating = nodes[redundant > 0].tolist()

    report = RiReport(
        beta=beta,
        nodes=nodes,
        counts=rows,
        total_influence=influence,
        redundant_influence=redundant,
        total_ri=float(redundant.sum()) if len(redundant) else 0.0,
        violating_nodes=sorted(violating),
    )
    logger.debug(f"RI report: {len(seeds)} spreaders, beta={beta}, total_ri={report.total_ri:.6g}, "
                 f"{len(violating)} violating nodes")
    return report
