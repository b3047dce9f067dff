"""Seeded grid functions shared by several test modules."""

import numpy as np

from src.grid_domain import GridFunction, MaskedGrid


def random_function(grid: MaskedGrid, seed: int) -> GridFunction:
    """Uniform random values on the active cells."""
    return GridFunction(grid, np.random.default_rng(seed).uniform(0.0, 1.0, grid.n_active))


def tent_sum(grid: MaskedGrid, seed: int, count: int = 3) -> GridFunction:
    """Seeded sum of tents, Lipschitz and nonnegative."""
    rng = np.random.default_rng(seed)
    x = grid.centers
    values = np.zeros(grid.n_active)
    for _ in range(count):
        c = x[rng.integers(grid.n_active)]
        radius = rng.uniform(0.2, 0.5)
        height = rng.uniform(0.5, 1.0)
        values += height * np.maximum(1.0 - np.linalg.norm(x - c, axis=1) / radius, 0.0)
    return GridFunction(grid, values)
