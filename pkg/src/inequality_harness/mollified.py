"""Difference-quotient form of a Dirichlet integral with a radial mollifier.

For ``u, w`` zero-extended to the whole space,

    form_eps(u, w) = sum_z sum_k phi_k [u(z + eps h_k) - u(z)] [w(z + eps h_k) - w(z)] / eps^2

with the kernel nodes ``h_k`` moving only the ``x`` variables of the split.
As ``eps -> 0`` it tends to ``(C / n) int grad_x u . grad_x w``. Translations
by a fraction of a cell use linear interpolation.
"""

import logging
import math

import numpy as np
from scipy import ndimage

from src.common.errors import ProfileError
from src.common.log import kv
from src.common.types import FloatArray
from src.grid_domain import GridFunction, lipschitz_estimate
from src.inequality_harness.hardy_littlewood import equality_holds, symmetrized_pair
from src.inequality_harness.kernel import DEFAULT_KERNEL, MollifierKernel, limit_factor
from src.inequality_harness.report import VerificationReport
from src.inequality_harness.tolerance import DEFAULT_TOLERANCES, Tolerances
from src.rearrangement import ensure_same_grid

logger = logging.getLogger(__name__)

EPSILON_SEQUENCE = (0.2, 0.1, 0.05, 0.025)


def _check_epsilon(eps: float) -> None:
    if not 0 < eps <= 1:
        raise ProfileError("epsilon out of range", f"eps={eps} not in (0, 1]")


def padded(u: GridFunction, eps: float) -> FloatArray:
    """Zero-extended values with room for every shift of length ``eps`` along ``x``."""
    n, _ = u.grid.effective_split()
    pad = math.ceil(eps / u.grid.h) + 1
    widths = [(pad, pad) if axis < n else (0, 0) for axis in range(u.grid.dim)]
    return np.pad(u.full(), widths)


def inner_slice(u: GridFunction, eps: float) -> tuple[slice, ...]:
    """Index of the original grid inside ``padded(u, eps)``."""
    n, _ = u.grid.effective_split()
    pad = math.ceil(eps / u.grid.h) + 1
    return tuple(slice(pad, -pad) if axis < n else slice(None) for axis in range(u.grid.dim))


def shifts(u: GridFunction, kernel: MollifierKernel, eps: float):
    """Yield ``(weight, shifted)`` with ``shifted(z) = padded(u)(z + eps h_k)``."""
    n, _ = u.grid.effective_split()
    offsets, weights = kernel.nodes(n)
    values = padded(u, eps)
    base = np.indices(values.shape, dtype=float)
    for offset, weight in zip(offsets * (eps / u.grid.h), weights):
        coords = base.copy()
        coords[:n] += offset.reshape((n,) + (1,) * u.grid.dim)
        yield weight, ndimage.map_coordinates(values, coords, order=1, mode="constant", cval=0.0)


def mollified_gradient_form(
    u: GridFunction, w: GridFunction, kernel: MollifierKernel = DEFAULT_KERNEL, eps: float = 0.1
) -> float:
    _check_epsilon(eps)
    ensure_same_grid(u, w)
    w = GridFunction(u.grid, w.values)
    pu, pw = padded(u, eps), padded(w, eps)
    total = 0.0
    for (weight, su), (_, sw) in zip(shifts(u, kernel, eps), shifts(w, kernel, eps)):
        total += weight * float(np.sum((su - pu) * (sw - pw)))
    return total * u.grid.cell_measure / eps**2


def mollified_laplacian(
    u: GridFunction, kernel: MollifierKernel = DEFAULT_KERNEL, eps: float = 0.1
) -> GridFunction:
    """``(n/C) int [u(x + eps h) - 2 u(x) + u(x - eps h)] / eps^2 phi(h) dh`` on active cells.

    The kernel nodes are symmetric, so the ``x - eps h`` term equals the
    ``x + eps h`` one after summation.
    """
    _check_epsilon(eps)
    n, _ = u.grid.effective_split()
    pu = padded(u, eps)
    acc = np.zeros_like(pu)
    for weight, su in shifts(u, kernel, eps):
        acc += weight * 2.0 * (su - pu)
    inner = acc[inner_slice(u, eps)].reshape(-1)[u.grid.active_index]
    return GridFunction(u.grid, inner / (limit_factor(kernel, n) * eps**2))


def mollified_couple_check(
    u: GridFunction,
    w: GridFunction,
    kernel: MollifierKernel = DEFAULT_KERNEL,
    eps: float = 0.1,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """``form_eps(u, w) >= form_eps(u^#, w^#)`` at a fixed ``eps``."""
    u_sharp, w_sharp = symmetrized_pair(u, w)
    hypothesis_ok = equality_holds(u, w, u_sharp, w_sharp, tolerances)
    lhs = mollified_gradient_form(u, w, kernel, eps)
    rhs = mollified_gradient_form(u_sharp, w_sharp, kernel, eps)
    n, _ = u.grid.effective_split()
    tol = limit_factor(kernel, n) * tolerances.gradient_pair(
        u.grid.h, lipschitz_estimate(u), lipschitz_estimate(w), u.grid.measure
    )
    logger.debug(kv("mollified_couple", eps=eps, lhs=lhs, rhs=rhs))
    return VerificationReport(
        "mollified_couple",
        lhs,
        rhs,
        tol,
        metadata={"h": u.grid.h, "eps": eps},
        hypothesis_ok=hypothesis_ok,
    )


def convergence_order(eps_values: FloatArray, errors: FloatArray) -> float:
    """Least-squares slope of ``log error`` against ``log eps``."""
    slope, _ = np.polyfit(np.log(eps_values), np.log(errors), 1)
    return float(slope)
