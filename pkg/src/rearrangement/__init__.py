"""Distribution functions, rearrangements, Schwarz and Steiner symmetrization."""

from src.rearrangement.distribution import (
    check_no_flat_zones,
    check_no_plateaus,
    decreasing_rearrangement,
    distribution_function,
    ensure_same_grid,
    flat_zone_values,
    inverse_identity_residuals,
    mu_prime,
    mu_prime_radial,
    plateau_threshold,
    slice_cell_measure,
    slice_cells,
    slice_distribution_function,
    slice_rearrangements,
)
from src.rearrangement.extremal import (
    chain_rule_gradient,
    check_key_condition,
    extremal_for,
    rank_order,
    steiner_extremal_for,
    truncate_profile,
)
from src.rearrangement.profiles import (
    RadialProfile,
    StepProfile,
    concentration,
    derivative_window,
    measure_slope,
    product_integral,
    profile_slope,
    radial_nodes,
    radial_profile_of,
    radial_slope,
    shell_slope,
    shell_window,
    unit_ball_measure,
)
from src.rearrangement.symmetrization import (
    SchwarzResult,
    centered_ball_grid,
    schwarz_rearrangement,
    steiner_grid,
    steiner_symmetrization,
    symmetrize,
)

__all__ = [
    "RadialProfile",
    "SchwarzResult",
    "StepProfile",
    "centered_ball_grid",
    "chain_rule_gradient",
    "check_key_condition",
    "check_no_flat_zones",
    "check_no_plateaus",
    "concentration",
    "decreasing_rearrangement",
    "derivative_window",
    "distribution_function",
    "ensure_same_grid",
    "extremal_for",
    "flat_zone_values",
    "inverse_identity_residuals",
    "measure_slope",
    "mu_prime",
    "mu_prime_radial",
    "plateau_threshold",
    "slice_cell_measure",
    "product_integral",
    "profile_slope",
    "radial_nodes",
    "radial_profile_of",
    "radial_slope",
    "rank_order",
    "schwarz_rearrangement",
    "shell_slope",
    "shell_window",
    "slice_cells",
    "slice_distribution_function",
    "slice_rearrangements",
    "steiner_extremal_for",
    "steiner_grid",
    "steiner_symmetrization",
    "symmetrize",
    "truncate_profile",
    "unit_ball_measure",
]
