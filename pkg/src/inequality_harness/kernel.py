"""Radial mollifier used by the difference-quotient form of a Dirichlet integral."""

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cache

import numpy as np
from scipy.integrate import quad

from src.common.types import FloatArray
from src.rearrangement import unit_ball_measure

# kernel sub-grid resolution per dimension
KERNEL_NODES = {1: 64, 2: 32}


def default_profile(r: FloatArray) -> FloatArray:
    """``(1 - r^2)^4`` on ``[0, 1)``, zero beyond."""
    r = np.asarray(r, dtype=float)
    return np.where(r < 1.0, (1.0 - np.minimum(r, 1.0) ** 2) ** 4, 0.0)


@dataclass(frozen=True)
class MollifierKernel:
    """Nonnegative, radially nonincreasing ``phi`` supported in the unit ball."""

    profile: Callable[[FloatArray], FloatArray] = field(default=default_profile)

    def second_moment(self, n: int) -> float:
        """``C = int_{B_1} phi(h) |h|^2 dh`` in dimension ``n``."""
        return _second_moment(self.profile, n)

    def nodes(self, n: int) -> tuple[FloatArray, FloatArray]:
        """Midpoint quadrature of the unit ball: ``(offsets (k, n), weights (k,))``.

        ``sum(weights * g(offsets))`` approximates ``int g(h) phi(h) dh``.
        """
        count = KERNEL_NODES[n]
        step = 2.0 / count
        axis = -1.0 + (np.arange(count) + 0.5) * step
        mesh = np.meshgrid(*([axis] * n), indexing="ij")
        offsets = np.stack([m.reshape(-1) for m in mesh], axis=1)
        radius = np.linalg.norm(offsets, axis=1)
        inside = radius < 1.0
        weights = self.profile(radius[inside]) * step**n
        return offsets[inside], weights


@cache
def _second_moment(profile: Callable[[FloatArray], FloatArray], n: int) -> float:
    surface = n * unit_ball_measure(n)
    value, _ = quad(
        lambda r: float(profile(np.array(r))) * r ** (n + 1), 0.0, 1.0, epsrel=1e-10
    )
    return surface * value


def limit_factor(kernel: MollifierKernel, n: int) -> float:
    """``C / n``, the factor the form picks up in the ``eps -> 0`` limit."""
    return kernel.second_moment(n) / n


DEFAULT_KERNEL = MollifierKernel()

