"""
Multi-spreader selectors.

``select_dri`` and ``select_dsn`` walk the degree ordering and keep a
candidate only if it adds no redundant influence (DRI) or sits at least
``min_pairwise_distance_rule()`` hops from every chosen spreader (DSN).
Both skip degree-1 nodes. Degree, NC, ND and CI are the comparison
baselines.
"""

import logging
from typing import Callable, Dict

import numpy as np

from spreadlab.core.config import config
from spreadlab.core.exceptions import DomainError
from spreadlab.graph.graph import Graph
from spreadlab.graph.structure import k_core_decomposition
from spreadlab.graph.traversal import ball, bfs_levels
from spreadlab.influence.overlap import ExposureCounts, check_beta, influence_rows
from spreadlab.influence.placement import min_pairwise_distance_rule
from spreadlab.selection.seeds import (
    EXHAUSTED_DEGREE_FILTER,
    NO_FEASIBLE_CANDIDATE,
    REACHED_M,
    SeedSet,
    degree_order,
)

logger = logging.getLogger('selection')

DEFAULT_CI_RADIUS = 2


def _check_m(m: int, upper: int = None):
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if upper is not None and m > upper:
        raise DomainError(f"m={m} exceeds the number of nodes ({upper})")


def _finish(name: str, nodes: list, reason: str, m: int) -> SeedSet:
    seeds = SeedSet(tuple(int(v) for v in nodes), reason, name)
    level = logging.INFO if reason != REACHED_M else logging.DEBUG
    logger.log(level, f"{name}: selected {len(seeds)} of m={m} spreaders ({reason})")
    return seeds


def select_degree(g: Graph, m: int) -> SeedSet:
    """The m highest-degree nodes."""
    _check_m(m, g.node_count)
    return _finish('degree', degree_order(g)[:m].tolist(), REACHED_M, m)


def select_dri(g: Graph, beta: float, m: int) -> SeedSet:
    """
    Degree-ordered greedy that never lets any non-spreader's influence exceed 1.

    Each candidate is placed tentatively; only nodes within distance 3 of it
    can have gained influence, so only those are re-checked before the
    candidate is either kept or withdrawn. The scan stops at m spreaders or
    at the first degree-1 node.
    """
    beta = check_beta(beta)
    _check_m(m)
    limit = 1.0 + config.feasibility_tolerance

    counts = ExposureCounts(g.node_count)
    selected = []
    reason = NO_FEASIBLE_CANDIDATE
    for v in degree_order(g).tolist():
        if g.degrees[v] <= 1:
            reason = EXHAUSTED_DEGREE_FILTER
            break
        touched = counts.add_seed(g, v)
        if touched:
            touched_ids = np.fromiter(touched, dtype=np.int64, count=len(touched))
            if np.any(influence_rows(counts.counts[touched_ids], beta) > limit):
                counts.remove_seed(g, v)
                logger.debug(f"dri: candidate {v} rejected (redundant influence)")
                continue
        selected.append(v)
        if len(selected) == m:
            reason = REACHED_M
            break
    return _finish('dri', selected, reason, m)


def dri_capacity(g: Graph, beta: float) -> SeedSet:
    """DRI left to converge on its own: the most spreaders it will place at ``beta``."""
    return select_dri(g, beta, max(g.node_count, 1))


def select_dsn(g: Graph, m: int) -> SeedSet:
    """Degree-ordered greedy keeping every pair of spreaders at least 3 hops apart."""
    _check_m(m)
    too_close = min_pairwise_distance_rule() - 1

    chosen = set()
    selected = []
    reason = NO_FEASIBLE_CANDIDATE
    for v in degree_order(g).tolist():
        if g.degrees[v] <= 1:
            reason = EXHAUSTED_DEGREE_FILTER
            break
        if chosen and not chosen.isdisjoint(ball(g, v, too_close)):
            continue
        chosen.add(v)
        selected.append(v)
        if len(selected) == m:
            reason = REACHED_M
            break
    return _finish('dsn', selected, reason, m)


def select_nc(g: Graph, m: int) -> SeedSet:
    """Top-m by neighborhood coreness, the sum of neighbors' coreness."""
    _check_m(m, g.node_count)
    coreness = k_core_decomposition(g)
    scores = [int(sum(coreness[u] for u in nbrs)) for nbrs in g.adjacency]
    ranked = sorted(range(g.node_count), key=lambda v: (-scores[v], -g.degrees[v], v))
    return _finish('nc', ranked[:m], REACHED_M, m)


def select_nd(g: Graph, m: int, rank_by: str = 'degree') -> SeedSet:
    """Ranked greedy that never picks a neighbor of an already chosen spreader."""
    _check_m(m)
    if rank_by == 'degree':
        order = degree_order(g).tolist()
    elif rank_by == 'coreness':
        coreness = k_core_decomposition(g)
        order = sorted(range(g.node_count), key=lambda v: (-coreness[v], -g.degrees[v], v))
    else:
        raise DomainError(f"rank_by must be 'degree' or 'coreness', got {rank_by!r}")

    chosen = set()
    selected = []
    for v in order:
        if chosen.isdisjoint(g.adjacency[v]):
            chosen.add(v)
            selected.append(v)
            if len(selected) == m:
                return _finish('nd', selected, REACHED_M, m)
    return _finish('nd', selected, NO_FEASIBLE_CANDIDATE, m)


def _ci_score(residual, degree, v: int, radius: int) -> int:
    if degree[v] <= 1:
        return 0
    sphere = [u for u, d in bfs_levels(residual, v, radius).items() if d == radius]
    return (degree[v] - 1) * sum(degree[u] - 1 for u in sphere)


def select_ci(g: Graph, m: int, radius: int = DEFAULT_CI_RADIUS) -> SeedSet:
    """
    Collective-influence selection by repeated removal.

    CI_l(v) = (k_v - 1) * sum over the distance-l sphere of (k_u - 1), with
    degrees taken in the residual graph. The top node is picked (ties: higher
    residual degree, then lower id) and removed with its edges. Only nodes
    within l + 1 hops of a removed node need fresh scores.
    """
    _check_m(m)
    if radius < 1:
        raise DomainError(f"CI radius must be >= 1, got {radius}")

    residual = [set(nbrs) for nbrs in g.adjacency]
    degree = g.degrees.tolist()
    scores = [_ci_score(residual, degree, v, radius) for v in range(g.node_count)]
    active = {v for v in range(g.node_count) if degree[v] > 0}

    selected = []
    while len(selected) < m:
        if not active:
            return _finish('ci', selected, NO_FEASIBLE_CANDIDATE, m)
        best = max(active, key=lambda v: (scores[v], degree[v], -v))
        selected.append(best)

        stale = set(bfs_levels(residual, best, radius + 1))
        for u in residual[best]:
            residual[u].discard(best)
            degree[u] -= 1
            if degree[u] == 0:
                active.discard(u)
        residual[best] = set()
        degree[best] = 0
        active.discard(best)
        stale.discard(best)
        for u in stale:
            scores[u] = _ci_score(residual, degree, u, radius)
        scores[best] = 0
    return _finish('ci', selected, REACHED_M, m)


def _run_dri(g, m, beta=None, **_):
    if beta is None:
        raise DomainError("dri needs beta")
    return select_dri(g, beta, m)


SELECTORS: Dict[str, Callable[..., SeedSet]] = {
    'degree': lambda g, m, **_: select_degree(g, m),
    'dri': _run_dri,
    'dsn': lambda g, m, **_: select_dsn(g, m),
    'nc': lambda g, m, **_: select_nc(g, m),
    'nd': lambda g, m, nd_rank_by='degree', **_: select_nd(g, m, rank_by=nd_rank_by),
    'ci': lambda g, m, ci_radius=DEFAULT_CI_RADIUS, **_: select_ci(g, m, radius=ci_radius),
}


def select(algo: str, g: Graph, m: int, beta: float = None, ci_radius: int = DEFAULT_CI_RADIUS,
           nd_rank_by: str = 'degree') -> SeedSet:
    """Dispatch to the selector registered under ``algo``."""
    try:
        selector = SELECTORS[algo]
    except KeyError:
        raise DomainError(f"unknown algorithm {algo!r}; choose from {sorted(SELECTORS)}") from None
    return selector(g, m, beta=beta, ci_radius=ci_radius, nd_rank_by=nd_rank_by)
