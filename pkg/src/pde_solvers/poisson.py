"""Dirichlet Poisson problems on masked grids."""

import logging

import numpy as np

from src.common.errors import DomainError
from src.common.log import kv
from src.grid_domain import GridFunction, MaskedGrid, is_connected
from src.pde_solvers.linear_system import DEFAULT_RTOL, assemble_poisson, conjugate_gradient

logger = logging.getLogger(__name__)


def solve_poisson_masked(
    grid: MaskedGrid, f: GridFunction, rtol: float = DEFAULT_RTOL
) -> GridFunction:
    """``-Lap u = f`` in the active cells, ``u = 0`` outside."""
    if not f.grid.same_as(grid):
        raise DomainError("incompatible grids", "datum must live on the solve grid")
    if not is_connected(grid):
        raise DomainError("disconnected domain")
    system = assemble_poisson(grid, f)
    x, iterations, residual = conjugate_gradient(system, rtol)
    logger.info(
        kv("poisson_solve", unknowns=system.dimension, iterations=iterations, residual=residual)
    )
    if np.all(f.values >= 0) and x.size and x.min() < 0:
        logger.warning(kv("maximum_principle_violated", minimum=float(x.min())))
    return GridFunction(grid, x)


def solve_steiner_problem(
    omega_sharp: MaskedGrid, f_sharp: GridFunction, rtol: float = DEFAULT_RTOL
) -> GridFunction:
    """``-Lap v = f^#`` on ``Omega^#``; same discretization as the masked solve."""
    return solve_poisson_masked(omega_sharp, f_sharp, rtol)
