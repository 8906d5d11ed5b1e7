from spreadlab.influence.overlap import (
    ExposureCounts,
    RiReport,
    exposure_counts,
    incremental_exposure_update,
    influence_rows,
    pair_influence,
    redundant_influence,
    ri_report,
    total_influence,
)
from spreadlab.influence.placement import (
    PlacementTriple,
    brute_force_maximal,
    feasible,
    maximal_triples,
    min_pairwise_distance_rule,
)
