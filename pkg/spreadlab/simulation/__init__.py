from spreadlab.simulation.exact import EXACT_MAX_NODES, exact_aif_small
from spreadlab.simulation.sir import (
    SpreadParams,
    SpreadSummary,
    Trajectory,
    aif_normalized,
    replication_rng,
    run_replications,
    simulate,
    simulate_once,
)
