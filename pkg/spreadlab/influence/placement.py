"""
Maximal spreader placements around a single non-spreader.

A placement (x1, x2, x3) puts x_i spreaders at distance i from a node, with
x1 <= x2 <= x3. It is feasible when the node's total influence stays <= 1,
and maximal when no coordinate can grow by one (re-sorted) while staying
feasible. Every triple with x1 = x2 = 0 is feasible for any beta, because a
single order's bracket never reaches 1; that ray has no maximal element and
is left out of the results.
"""

import logging
import math
from typing import List, NamedTuple, Optional

from spreadlab.core.config import config
from spreadlab.core.exceptions import DomainError, EnumerationBoundError
from spreadlab.influence.overlap import check_beta, total_influence

logger = logging.getLogger('influence')

DEFAULT_BOUND = 64


class PlacementTriple(NamedTuple):
    x1: int
    x2: int
    x3: int

    @property
    def total(self) -> int:
        return self.x1 + self.x2 + self.x3

    def is_ordered(self) -> bool:
        return 0 <= self.x1 <= self.x2 <= self.x3

    def bumped(self):
        """The three +1 perturbations, each re-sorted into x1 <= x2 <= x3."""
        for k in range(3):
            coords = list(self)
            coords[k] += 1
            yield PlacementTriple(*sorted(coords))


def min_pairwise_distance_rule() -> int:
    """
    Smallest spreader-to-spreader distance that avoids shared first-order neighbors.

    Two spreaders at distance <= 2 can both sit next to one node, the x1 >= 2
    placements that the enumeration shows to be the first to overflow.
    """
    return 3


def influence_of(x: PlacementTriple, beta: float) -> float:
    return total_influence(x.x1, x.x2, x.x3, beta)


def feasible(x, beta: float) -> bool:
    """True iff placing ``x`` keeps the node's total influence <= 1 (with tolerance)."""
    x = PlacementTriple(*x)
    if not x.is_ordered():
        raise DomainError(f"placement must satisfy 0 <= x1 <= x2 <= x3, got {tuple(x)}")
    return influence_of(x, beta) <= 1.0 + config.feasibility_tolerance


def _is_maximal(x: PlacementTriple, beta: float) -> bool:
    return not any(feasible(y, beta) for y in x.bumped())


def _max_x3(x1: int, x2: int, beta: float) -> Optional[int]:
    """Largest x3 >= x2 keeping (x1, x2, x3) feasible, None if there is none."""
    if not feasible((x1, x2, x2), beta):
        return None
    head = total_influence(x1, x2, 0, beta)
    budget = 1.0 + config.feasibility_tolerance - head
    # (1 - b^3)^x3 >= 1 - budget, solved for x3 and then nudged onto the exact boundary
    if beta == 1.0:
        x3 = x2
    else:
        x3 = max(x2, int(math.floor(math.log(max(1.0 - budget, 1e-300)) / math.log(1.0 - beta ** 3))))
    while x3 > x2 and not feasible((x1, x2, x3), beta):
        x3 -= 1
    while feasible((x1, x2, x3 + 1), beta):
        x3 += 1
    return x3


def maximal_triples(beta: float, bound: Optional[int] = None) -> List[PlacementTriple]:
    """
    All maximal feasible placements for ``beta``, sorted by x1 then total, descending.

    Off the x1 = x2 = 0 ray the feasible region is finite, so with
    ``bound=None`` it is enumerated exactly. An explicit ``bound`` caps every
    coordinate and raises EnumerationBoundError when a feasible placement
    reaches it, since maximal placements may then lie outside the box.
    """
    check_beta(beta)
    if bound is not None and bound < 1:
        raise DomainError(f"bound must be >= 1, got {bound}")

    found = []
    x1 = 0
    while feasible((x1, x1, x1), beta):
        x2 = max(x1, 1)
        while True:
            x3 = _max_x3(x1, x2, beta)
            if x3 is None:
                break
            if bound is not None and x3 >= bound:
                raise EnumerationBoundError(
                    f"feasible placement ({x1}, {x2}, {x3}) reaches bound={bound} at beta={beta}; "
                    f"use a larger bound"
                )
            candidate = PlacementTriple(x1, x2, x3)
            if _is_maximal(candidate, beta):
                found.append(candidate)
            x2 += 1
        x1 += 1

    found.sort(key=lambda t: (-t.x1, -t.total, t.x2))
    logger.debug(f"beta={beta}: {len(found)} maximal placements")
    return found


def brute_force_maximal(beta: float, bound: int = DEFAULT_BOUND) -> List[PlacementTriple]:
    """Exhaustive scan over every ordered triple with coordinates <= bound."""
    check_beta(beta)
    found = []
    for x1 in range(bound + 1):
        for x2 in range(max(x1, 1), bound + 1):
            for x3 in range(x2, bound + 1):
                x = PlacementTriple(x1, x2, x3)
                if feasible(x, beta) and _is_maximal(x, beta):
                    found.append(x)
    found.sort(key=lambda t: (-t.x1, -t.total, t.x2))
    return found
