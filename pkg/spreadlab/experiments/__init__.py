from spreadlab.experiments.harness import (
    PairedTest,
    PerturbationSpec,
    cell_seed,
    paired_aif_test,
    resolve_betas,
    run_capacity,
    run_curve,
    run_properties,
    run_stability,
    run_stats,
    run_sweep,
    run_table1,
)
from spreadlab.experiments.outputs import Table, write_table
