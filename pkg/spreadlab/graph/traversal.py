"""Bounded-depth breadth-first queries."""

import math
from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Set

from spreadlab.core.exceptions import DomainError
from spreadlab.graph.graph import Graph

# Reported by shortest_distance for unreachable pairs and pairs past the cutoff
BEYOND_CUTOFF = math.inf


def bfs_levels(adjacency: Sequence[Iterable[int]], source: int, depth: Optional[int] = None) -> Dict[int, int]:
    """
    Hop distance from ``source`` to every node within ``depth`` hops (source included at 0).

    ``adjacency`` is any id-indexed neighbor container, so mutable residual
    graphs can be searched as well as ``Graph.adjacency``.
    """
    dist = {source: 0}
    frontier = [source]
    level = 0
    while frontier and (depth is None or level < depth):
        level += 1
        next_frontier = []
        for v in frontier:
            for u in adjacency[v]:
                if u not in dist:
                    dist[u] = level
                    next_frontier.append(u)
        frontier = next_frontier
    return dist


def bounded_bfs(g: Graph, source: int, depth: Optional[int] = None) -> Dict[int, int]:
    """Hop distance from ``source`` to every node of ``g`` within ``depth`` hops."""
    return bfs_levels(g.adjacency, g.check_node(source), depth)


def ball(g: Graph, v: int, radius: int) -> Set[int]:
    """Nodes at distance 1..radius from ``v``."""
    dist = bounded_bfs(g, v, radius)
    del dist[v]
    return set(dist)


def neighborhood_orders(g: Graph, v: int, max_order: int = 3) -> List[Set[int]]:
    """``[N_1(v), ..., N_max_order(v)]``, N_i being the nodes at distance exactly i."""
    if max_order < 1:
        raise DomainError(f"max_order must be >= 1, got {max_order}")
    orders = [set() for _ in range(max_order)]
    for u, d in bounded_bfs(g, v, max_order).items():
        if d > 0:
            orders[d - 1].add(u)
    return orders


def shortest_distance(g: Graph, u: int, v: int, cutoff: Optional[int] = None):
    """
    Hop count of a shortest u-v path.

    Returns ``BEYOND_CUTOFF`` when ``v`` is unreachable or farther than
    ``cutoff``; the search stops expanding at the cutoff depth.
    """
    u = g.check_node(u)
    v = g.check_node(v)
    if u == v:
        return 0
    adjacency = g.adjacency
    seen = {u}
    queue = deque([(u, 0)])
    while queue:
        node, d = queue.popleft()
        if cutoff is not None and d >= cutoff:
            continue
        for w in adjacency[node]:
            if w == v:
                return d + 1
            if w not in seen:
                seen.add(w)
                queue.append((w, d + 1))
    return BEYOND_CUTOFF
