"""Riesz rearrangement inequality by direct summation."""

import logging

import numpy as np
from scipy import ndimage

from src.common.errors import DomainError, SolverError
from src.common.log import kv
from src.grid_domain import GridFunction, integrate, lipschitz_estimate, total_variation
from src.inequality_harness.hardy_littlewood import symmetrized_pair
from src.inequality_harness.kernel import DEFAULT_KERNEL, MollifierKernel
from src.inequality_harness.mollified import inner_slice, padded, shifts
from src.inequality_harness.report import LESS_EQUAL, VerificationReport
from src.inequality_harness.tolerance import DEFAULT_TOLERANCES, Tolerances
from src.rearrangement import schwarz_rearrangement

logger = logging.getLogger(__name__)


def _kernel_at(k: GridFunction, offsets: np.ndarray) -> np.ndarray:
    # offsets: (count, dim) points, k zero-extended and linearly interpolated
    coords = (offsets - np.asarray(k.grid.origin)) / k.grid.h - 0.5
    return ndimage.map_coordinates(k.full(), coords.T, order=1, mode="constant", cval=0.0)


def triple_sum(u: GridFunction, w: GridFunction, k: GridFunction) -> float:
    """``sum_x sum_z u(x) w(z) k(x - z) h^(2 dim)``, outer loop over ``x`` in cell order."""
    total = 0.0
    w_centers = w.grid.centers
    for x, ux in zip(u.grid.centers, u.values):
        if ux == 0.0:
            continue
        total += ux * float(np.dot(w.values, _kernel_at(k, x - w_centers)))
    return total * u.grid.cell_measure * w.grid.cell_measure


def _convolution_bound(f: GridFunction, g: GridFunction) -> float:
    # Young: sup|f * g| <= min(sup|f| |g|_1, |f|_1 sup|g|)
    a, b = np.abs(f.values), np.abs(g.values)
    cell = f.grid.cell_measure
    return float(min(a.max(initial=0.0) * b.sum(), a.sum() * b.max(initial=0.0)) * cell)


def riesz_check(
    u: GridFunction,
    w: GridFunction,
    k: GridFunction,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """``int int u(x) w(z) k(x - z) <= the same for u_star, w_star, k_star``.

    Shifting one factor by a cell moves the sum by at most its jump mass times
    a bound on the convolution of the other two, so the tolerance is
    ``c_riesz h (TV u sup|w * k| + TV w sup|u * k| + TV k sup|u * w|)``. It
    vanishes with ``h`` for indicators too.
    """
    if len({u.grid.h, w.grid.h, k.grid.h}) != 1 or len({u.grid.dim, w.grid.dim, k.grid.dim}) != 1:
        raise DomainError("incompatible grids", "Riesz inputs need equal spacing and dimension")
    cells = u.grid.n_active + w.grid.n_active + k.grid.n_active
    if cells > tolerances.riesz_cap:
        raise SolverError(
            "instance too large for direct Riesz", f"{cells} cells > cap {tolerances.riesz_cap}"
        )
    lhs = triple_sum(u, w, k)
    u_star, w_star, k_star = (schwarz_rearrangement(f).function for f in (u, w, k))
    rhs = triple_sum(u_star, w_star, k_star)
    terms = (
        total_variation(u) * _convolution_bound(w, k)
        + total_variation(w) * _convolution_bound(u, k)
        + total_variation(k) * _convolution_bound(u, w)
    )
    tol = tolerances.jump_pairing(u.grid.h, terms)
    logger.debug(kv("riesz", cells=cells, lhs=lhs, rhs=rhs, tolerance=tol))
    return VerificationReport("riesz", lhs, rhs, tol, LESS_EQUAL, {"h": u.grid.h})


def _shifted_pairing(
    u: GridFunction, w: GridFunction, kernel: MollifierKernel, eps: float
) -> float:
    acc = np.zeros_like(padded(u, eps))
    for weight, shifted in shifts(u, kernel, eps):
        acc += weight * shifted
    averaged = acc[inner_slice(u, eps)].reshape(-1)[u.grid.active_index]
    return float(np.dot(averaged, w.values) * u.grid.cell_measure)


def riesz_slice_check(
    u: GridFunction,
    w: GridFunction,
    eps: float = 0.1,
    kernel: MollifierKernel = DEFAULT_KERNEL,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """``int int u(x + eps h, y) w(x, y) phi(h) <= the same for u^#, w^#``, slice by slice."""
    u_sharp, w_sharp = symmetrized_pair(u, w)
    lhs = _shifted_pairing(u, w, kernel, eps)
    rhs = _shifted_pairing(u_sharp, w_sharp, kernel, eps)
    _, weights = kernel.nodes(u.grid.effective_split()[0])
    tol = (
        tolerances.c2
        * u.grid.h
        * float(np.sum(weights))
        * (lipschitz_estimate(u) * integrate(w) + lipschitz_estimate(w) * integrate(u))
    )
    logger.debug(kv("riesz_slice", eps=eps, lhs=lhs, rhs=rhs))
    return VerificationReport(
        "riesz_slice", lhs, rhs, tol, LESS_EQUAL, {"h": u.grid.h, "eps": eps}
    )
