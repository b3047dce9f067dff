"""Finite-difference and radial solvers for the Dirichlet problems being compared."""

from src.pde_solvers.linear_system import (
    LinearSystem,
    assemble_poisson,
    conjugate_gradient,
    iteration_cap,
)
from src.pde_solvers.poisson import solve_poisson_masked, solve_steiner_problem
from src.pde_solvers.radial import (
    RadialSolution,
    flux,
    solve_radial_plaplacian,
    solve_radial_poisson,
)

__all__ = [
    "LinearSystem",
    "RadialSolution",
    "assemble_poisson",
    "conjugate_gradient",
    "flux",
    "iteration_cap",
    "solve_poisson_masked",
    "solve_radial_plaplacian",
    "solve_radial_poisson",
    "solve_steiner_problem",
]
