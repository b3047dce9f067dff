"""Distribution functions, decreasing rearrangements and their derivatives."""

import logging

import numpy as np

from src.common.errors import DomainError, ProfileError
from src.common.types import FloatArray
from src.grid_domain import GridFunction, MaskedGrid, gradient_fd
from src.rearrangement.profiles import (
    StepProfile,
    derivative_window,
    measure_slope,
    shell_slope,
    unit_ball_measure,
)

logger = logging.getLogger(__name__)


def distribution_function(u: GridFunction, t: float) -> float:
    """``mu_u(t)``: measure of ``{u > t}``."""
    if t < 0:
        raise ProfileError("negative threshold", str(t))
    return int(np.count_nonzero(u.values > t)) * u.grid.cell_measure


def decreasing_rearrangement(u: GridFunction) -> StepProfile:
    """``u*`` as a step profile, one step of width ``h^dim`` per cell."""
    u.require_nonnegative()
    return StepProfile.from_samples(u.values, u.grid.cell_measure)


def slice_cells(grid: MaskedGrid) -> list[np.ndarray]:
    """Active-cell positions (into ``GridFunction.values``) of every ``y``-slice.

    A grid without ``y`` axes has a single slice. Slices are listed in
    lexicographic order of their ``y`` index.
    """
    n, m = grid.effective_split()
    if m == 0:
        return [np.arange(grid.n_active)]
    coords = np.unravel_index(grid.active_index, grid.extents)
    y_index = coords[n]
    return [np.flatnonzero(y_index == j) for j in range(grid.extents[n])]


def slice_cell_measure(grid: MaskedGrid) -> float:
    """``L^n`` measure of one cell inside a slice."""
    n, _ = grid.effective_split()
    return float(grid.h**n)


def slice_distribution_function(u: GridFunction, t: float) -> FloatArray:
    """``mu_u(t, y)`` for every ``y``-slice."""
    if t < 0:
        raise ProfileError("negative threshold", str(t))
    cell = slice_cell_measure(u.grid)
    return np.array([np.count_nonzero(u.values[idx] > t) * cell for idx in slice_cells(u.grid)])


def slice_rearrangements(u: GridFunction) -> list[StepProfile]:
    """``u*(s, y)``, the decreasing rearrangement in codimension ``n``, slice by slice."""
    u.require_nonnegative()
    cell = slice_cell_measure(u.grid)
    return [StepProfile.from_samples(u.values[idx], cell) for idx in slice_cells(u.grid)]


def plateau_threshold(u: GridFunction) -> float:
    return derivative_window(u.grid.measure, u.grid.cell_measure)


def flat_zone_values(u: GridFunction) -> FloatArray:
    """Values strictly between 0 and ``max u`` held with zero gradient on a window of measure.

    Only cells whose finite-difference gradient vanishes count, so values a
    radial function repeats on symmetric cells are not flat zones.
    """
    top = u.max
    still = (gradient_fd(u).norm() == 0.0) & (u.values > 0) & (u.values < top)
    values, counts = np.unique(u.values[still], return_counts=True)
    heavy = counts * u.grid.cell_measure >= plateau_threshold(u)
    return values[heavy]


def check_no_flat_zones(u: GridFunction) -> bool:
    """Discrete ``|{grad u = 0, 0 < u < sup u}| = 0``."""
    return flat_zone_values(u).size == 0


def check_no_plateaus(ustar: StepProfile, cell: float) -> bool:
    """Discrete form of the weaker condition on ``u*``: no interior step wider than a window."""
    if len(ustar) == 0:
        return True
    top = ustar.values[0]
    inner = (ustar.values > 0) & (ustar.values < top)
    wide = ustar.widths >= derivative_window(ustar.total, cell)
    return not bool(np.any(inner & wide))


def mu_prime(u: GridFunction, t: float) -> float:
    """``mu_u'(t) = 1 / (u*)'(mu_u(t))`` by a difference quotient over a shell window."""
    if not 0 < t < u.max:
        raise ProfileError("threshold out of range", f"t={t} not in (0, {u.max})")
    if np.any(np.isclose(flat_zone_values(u), t, rtol=0.0, atol=1e-12)):
        raise ProfileError("derivative undefined on plateau", f"t={t}")
    ustar = decreasing_rearrangement(u)
    mu = distribution_function(u, t)
    slope = float(measure_slope(ustar, mu, u.grid.dim, u.grid.h))
    if slope == 0.0:
        raise ProfileError("derivative undefined on plateau", f"t={t}")
    return 1.0 / slope


def mu_prime_radial(u: GridFunction, t: float) -> float:
    """``-n omega_n^(1/n) mu^(1-1/n) / |grad u_star|`` on the sphere ``{u_star = t}``."""
    n = u.grid.dim
    omega = unit_ball_measure(n)
    mu = distribution_function(u, t)
    radius = (mu / omega) ** (1.0 / n)
    ustar = decreasing_rearrangement(u)
    slope = float(shell_slope(ustar, n, np.array([radius]), u.grid.h)[0])
    if slope == 0.0:
        raise ProfileError("derivative undefined on plateau", f"t={t}")
    return -n * omega ** (1.0 / n) * mu ** (1.0 - 1.0 / n) / slope


def inverse_identity_residuals(u: GridFunction) -> tuple[float, float]:
    """Largest ``|mu_u(u*(s)) - s|`` over step midpoints and ``|u*(mu_u(t)) - t|`` over values."""
    ustar = decreasing_rearrangement(u)
    if len(ustar) == 0:
        return 0.0, 0.0
    mids = 0.5 * (ustar.breakpoints[:-1] + ustar.breakpoints[1:])
    mu_of_ustar = np.array([ustar.distribution(v) for v in ustar.values])
    first = float(np.max(np.abs(mu_of_ustar - mids)))
    positive = ustar.values > 0
    second = float(
        np.max(np.abs(ustar(mu_of_ustar[positive]) - ustar.values[positive]), initial=0.0)
    )
    return first, second


def ensure_same_grid(u: GridFunction, w: GridFunction) -> None:
    if u.grid is not w.grid and not u.grid.same_as(w.grid):
        raise DomainError("incompatible grids")
