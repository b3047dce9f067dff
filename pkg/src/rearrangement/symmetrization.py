"""Schwarz and Steiner symmetrization of grid functions.

The symmetrized domain is built from the cells closest to the symmetry
center, as many as the source has, so its measure is exact. Sorted source
values are assigned in order of increasing distance (ties broken by
lexicographic cell index), which keeps the multiset of values, and hence
every ``L^p`` norm, unchanged.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.common.errors import DomainError
from src.common.types import FloatArray
from src.grid_domain import GridFunction, MaskedGrid, Split
from src.rearrangement.distribution import decreasing_rearrangement, slice_cells
from src.rearrangement.profiles import (
    RadialProfile,
    StepProfile,
    radial_profile_of,
    unit_ball_measure,
)

logger = logging.getLogger(__name__)

SUPPORTED_CODIMENSIONS = (1, 2)


@dataclass(frozen=True, eq=False)
class SchwarzResult:
    """``u_star`` as a radial profile, as a grid function on ``Omega_star``, and ``u*``."""

    profile: RadialProfile
    function: GridFunction
    rearrangement: StepProfile


def _centered_coordinates(extent: int, h: float) -> FloatArray:
    # half-integer multiples of h, mirror-symmetric about 0
    return (np.arange(extent) + 0.5 - extent / 2) * h


def _ball_extent(count: int, h: float, dim: int) -> int:
    radius = (count * h**dim / unit_ball_measure(dim)) ** (1.0 / dim)
    return 2 * math.ceil(radius / h) + 2


def centered_ball_grid(count: int, h: float, dim: int, split: Split | None = None):
    """Grid whose ``count`` active cells are those nearest the origin.

    Returns the grid and the flat cell indices in order of increasing radius.
    """
    extent = _ball_extent(count, h, dim)
    axis = _centered_coordinates(extent, h)
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    radius_sq = np.sum([m.reshape(-1) ** 2 for m in mesh], axis=0)
    order = np.argsort(radius_sq, kind="stable")[:count]
    mask = np.zeros(extent**dim, dtype=bool)
    mask[order] = True
    origin = tuple([-extent * h / 2] * dim)
    return MaskedGrid(origin, h, mask.reshape((extent,) * dim), split), order


def _place(grid: MaskedGrid, order: np.ndarray, ranked_values: FloatArray) -> GridFunction:
    full = np.zeros(grid.mask.size)
    full[order] = ranked_values
    return GridFunction.from_array(grid, full.reshape(grid.extents))


def schwarz_rearrangement(u: GridFunction, nodes: int = 1024) -> SchwarzResult:
    """``u_star(x) = u*(omega_n |x|^n)``: radial profile plus resampled grid function."""
    u.require_nonnegative()
    grid = u.grid
    ustar = decreasing_rearrangement(u)
    target, order = centered_ball_grid(grid.n_active, grid.h, grid.dim, (grid.dim, 0))
    resampled = _place(target, order, np.sort(u.values)[::-1])
    return SchwarzResult(radial_profile_of(ustar, grid.dim, nodes), resampled, ustar)


def steiner_grid(grid: MaskedGrid) -> tuple[MaskedGrid, list[np.ndarray]]:
    """``Omega^#`` for a split grid, and per-slice flat indices ordered by ``|x|``."""
    if grid.split is None:
        raise DomainError("no codimension split")
    n, m = grid.split
    if n not in SUPPORTED_CODIMENSIONS:
        raise DomainError("unsupported codimension", str(n))
    if m == 0:
        target, order = centered_ball_grid(grid.n_active, grid.h, grid.dim, grid.split)
        return target, [order]
    counts = [idx.size for idx in slice_cells(grid)]
    x_extent = 2 * math.ceil(max(counts) / 2)
    y_extent = grid.extents[1]
    x_rank = np.argsort(np.abs(_centered_coordinates(x_extent, grid.h)), kind="stable")
    mask = np.zeros((x_extent, y_extent), dtype=bool)
    orders = []
    for j, count in enumerate(counts):
        rows = x_rank[:count]
        mask[rows, j] = True
        orders.append(np.ravel_multi_index((rows, np.full(count, j)), (x_extent, y_extent)))
    origin = (-x_extent * grid.h / 2, grid.origin[1])
    return MaskedGrid(origin, grid.h, mask, grid.split), orders


def steiner_symmetrization(u: GridFunction) -> GridFunction:
    """``u^#(x, y) = u*(omega_n |x|^n, y)`` on ``Omega^#``, slice by slice."""
    u.require_nonnegative()
    target, orders = steiner_grid(u.grid)
    full = np.zeros(target.mask.size)
    for idx, order in zip(slice_cells(u.grid), orders):
        full[order] = np.sort(u.values[idx])[::-1]
    logger.debug("steiner slices=%d target_extents=%s", len(orders), target.extents)
    return GridFunction.from_array(target, full.reshape(target.extents))


def symmetrize(u: GridFunction) -> GridFunction:
    """Steiner symmetrization along the grid's split, Schwarz when it has none."""
    if u.grid.split is None:
        return schwarz_rearrangement(u).function
    return steiner_symmetrization(u)
