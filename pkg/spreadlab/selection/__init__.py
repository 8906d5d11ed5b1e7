from spreadlab.selection.seeds import (
    CONVERGED_REASONS,
    EXHAUSTED_DEGREE_FILTER,
    NO_FEASIBLE_CANDIDATE,
    REACHED_M,
    SeedSet,
    degree_order,
)
from spreadlab.selection.selectors import (
    DEFAULT_CI_RADIUS,
    SELECTORS,
    dri_capacity,
    select,
    select_ci,
    select_degree,
    select_dri,
    select_dsn,
    select_nc,
    select_nd,
)
