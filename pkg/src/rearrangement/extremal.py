"""Extremal pairs for the Hardy-Littlewood inequality and their gradients."""

import logging
import math

import numpy as np

from src.common.errors import DomainError, ProfileError
from src.common.types import FloatArray
from src.grid_domain import GridFunction, VectorField, gradient_fd
from src.rearrangement.distribution import (
    decreasing_rearrangement,
    flat_zone_values,
    slice_cell_measure,
    slice_cells,
)
from src.rearrangement.profiles import StepProfile, profile_slope, shell_window
from src.rearrangement.symmetrization import steiner_grid

logger = logging.getLogger(__name__)


def rank_order(values: FloatArray) -> np.ndarray:
    """Cell positions sorted by decreasing value, ties in lexicographic cell order."""
    return np.argsort(-np.asarray(values), kind="stable")


def _extremal_values(values: FloatArray, W: StepProfile, cell: float) -> FloatArray:
    # the k-th ranked cell takes the average of W over its slot [k cell, (k+1) cell)
    edges = np.arange(values.size + 1) * cell
    slots = W.block_average(edges[:-1], edges[1:]) if values.size else np.zeros(0)
    out = np.empty(values.size)
    out[rank_order(values)] = slots
    return out


def _check_total(W: StepProfile, total: float) -> None:
    if abs(W.total - total) > 1e-9 * max(total, 1.0):
        raise ProfileError("incompatible profile", f"profile measure {W.total} != {total}")


def extremal_for(u: GridFunction, W: StepProfile) -> GridFunction:
    """``w = W(mu_u(u))`` with flat zones of ``u`` ordered lexicographically.

    Gives ``sum u w h^dim = int u* W`` by construction.
    """
    u.require_nonnegative()
    _check_total(W, u.grid.measure)
    return u.with_values(_extremal_values(u.values, W, u.grid.cell_measure))


def steiner_extremal_for(u: GridFunction, W: GridFunction) -> GridFunction:
    """Slice-wise extremal: each ``y``-slice of ``w`` is nested with the slice of ``u``.

    ``W`` lives on ``Omega^#`` and supplies one profile per slice.
    """
    u.require_nonnegative()
    if u.grid.split is None:
        u = GridFunction(u.grid.with_split((u.grid.dim, 0)), u.values)
    target, _ = steiner_grid(u.grid)
    if not target.same_as(W.grid):
        raise DomainError("incompatible grids", "W must live on the symmetrized domain")
    cell = slice_cell_measure(u.grid)
    out = np.zeros(u.grid.n_active)
    for src_idx, dst_idx in zip(slice_cells(u.grid), slice_cells(W.grid)):
        profile = StepProfile.from_samples(W.values[dst_idx], cell)
        _check_total(profile, src_idx.size * cell)
        out[src_idx] = _extremal_values(u.values[src_idx], profile, cell)
    return GridFunction(u.grid, out)


def check_key_condition(W: StepProfile, ustar: StepProfile) -> tuple[bool, float]:
    """``-W' <= C (-u*)'``: ``W`` may only drop where ``u*`` drops.

    Returns the verdict and the smallest admissible ``C`` (``inf`` when false).
    """
    _check_total(W, ustar.total)
    tol = 1e-12 * max(ustar.total, 1.0)
    w_drops = W.values[:-1] - W.values[1:]
    w_locs = W.breakpoints[1:-1]
    u_locs = ustar.breakpoints[1:-1]
    for loc in w_locs[w_drops > 0]:
        if u_locs.size == 0 or np.min(np.abs(u_locs - loc)) > tol:
            return False, math.inf
    if u_locs.size == 0:
        return True, 0.0
    du = ustar.values[:-1] - ustar.values[1:]
    dw = W(u_locs - tol) - W(u_locs + tol)
    if np.any((du == 0) & (dw > 0)):
        return False, math.inf
    ratios = dw[du > 0] / du[du > 0]
    return True, float(max(ratios.max(initial=0.0), 0.0))


def chain_rule_gradient(u: GridFunction, W: StepProfile) -> VectorField:
    """``grad w = W'(mu_u(u)) mu_u'(u) grad u`` for ``w = extremal_for(u, W)``.

    The scalar factor is the ratio of the slopes of ``W`` and ``u*`` at each
    cell's rank measure over a shell window, and zero on flat zones of ``u``.
    Where ``u*`` is still flat over that window the window is doubled until
    it drops, so ``W = u*`` gives the factor 1 on every cell.
    """
    ustar = decreasing_rearrangement(u)
    ok, _ = check_key_condition(W, ustar)
    if not ok:
        raise ProfileError("extremal not Sobolev-regular")
    cell = u.grid.cell_measure
    s = np.empty(u.grid.n_active)
    s[rank_order(u.values)] = (np.arange(u.grid.n_active) + 0.5) * cell
    window = shell_window(s, u.grid.dim, u.grid.h, ustar.total)
    dw = profile_slope(W, s, window)
    du = profile_slope(ustar, s, window)
    flat = du == 0
    while np.any(flat & (window < ustar.total / 2)):
        window = np.where(flat, 2.0 * window, window)
        dw[flat] = profile_slope(W, s[flat], window[flat])
        du[flat] = profile_slope(ustar, s[flat], window[flat])
        flat = du == 0
    factor = np.divide(dw, du, out=np.zeros_like(dw), where=du != 0)
    factor[np.isin(u.values, flat_zone_values(u))] = 0.0
    return gradient_fd(u).scaled(factor)


def truncate_profile(W: StepProfile, delta: float) -> StepProfile:
    """``(W - delta)_+``."""
    return W.mapped(lambda v: np.maximum(v - delta, 0.0))
