"""Radial Dirichlet problems on balls, by flux quadrature.

For a radial datum the flux through the sphere of radius ``r`` is known in
closed form from the step profile of ``f*``:

    |v'|^(p-1) = G(r) = int_0^{omega r^n} f* / (n omega r^(n-1))

and ``v(r) = int_r^R |v'|``.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from src.common.errors import ProfileError, SolverError
from src.common.log import kv
from src.common.types import FloatArray
from src.rearrangement import RadialProfile, StepProfile, radial_nodes, unit_ball_measure

logger = logging.getLogger(__name__)

DEFAULT_NODES = 1024


@dataclass(frozen=True)
class RadialSolution:
    """``v`` and ``|v'|`` on the same radial nodes."""

    n: int
    p: float
    v: RadialProfile
    slope: RadialProfile

    @property
    def radius(self) -> float:
        return self.v.radius


def _ball_radius(fstar: StepProfile, n: int, R: float | None) -> float:
    omega = unit_ball_measure(n)
    if R is None:
        return float((fstar.total / omega) ** (1.0 / n))
    if abs(omega * R**n - fstar.total) > 1e-9 * max(fstar.total, 1.0):
        raise ProfileError("incompatible profile", f"measure {fstar.total} != |B_{R}|")
    return float(R)


def flux(fstar: StepProfile, n: int, radii: FloatArray) -> FloatArray:
    """``G(r)``, exact for a step profile; ``G(0) = 0``."""
    omega = unit_ball_measure(n)
    mass = fstar.integral_to(omega * radii**n)
    surface = n * omega * radii ** (n - 1)
    return np.divide(mass, surface, out=np.zeros_like(mass), where=surface > 0)


def solve_radial_plaplacian(
    fstar: StepProfile,
    n: int,
    p: float,
    R: float | None = None,
    nodes: int = DEFAULT_NODES,
) -> RadialSolution:
    """``-div(|grad v|^(p-2) grad v) = f_star`` in ``B_R``, ``v = 0`` on the sphere."""
    if p <= 1:
        raise SolverError("exponent out of range", f"p={p}")
    radius = _ball_radius(fstar, n, R)
    radii = radial_nodes(radius, nodes)
    slope = flux(fstar, n, radii) ** (1.0 / (p - 1))
    climbed = cumulative_trapezoid(slope, radii, initial=0.0)
    v = climbed[-1] - climbed
    logger.debug(kv("radial_solve", n=n, p=p, radius=radius, v0=float(v[0])))
    return RadialSolution(n, p, RadialProfile(n, radii, v), RadialProfile(n, radii, slope))


def solve_radial_poisson(
    fstar: StepProfile, n: int, R: float | None = None, nodes: int = DEFAULT_NODES
) -> RadialSolution:
    """``-Lap v = f_star`` in ``B_R``; the ``p = 2`` case of the radial ``p``-Laplacian."""
    return solve_radial_plaplacian(fstar, n, 2.0, R, nodes)
