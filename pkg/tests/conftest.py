"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from src.grid_domain import (
    Disk,
    GridFunction,
    MaskedGrid,
    Rectangle,
    make_masked_grid,
)

H = 1.0 / 32


@pytest.fixture
def unit_square() -> MaskedGrid:
    """Fixture providing the unit square at h = 1/32."""
    return make_masked_grid(((0.0, 1.0), (0.0, 1.0)), H, Rectangle((0.0, 0.0), (1.0, 1.0)))


@pytest.fixture
def split_square() -> MaskedGrid:
    """Fixture providing the unit square with an (x, y) = (1, 1) split."""
    return make_masked_grid(
        ((0.0, 1.0), (0.0, 1.0)), H, Rectangle((0.0, 0.0), (1.0, 1.0)), split=(1, 1)
    )


@pytest.fixture
def unit_disk() -> MaskedGrid:
    """Fixture providing the unit disk centered at the origin at h = 1/32."""
    return make_masked_grid(((-1.0, 1.0), (-1.0, 1.0)), H, Disk((0.0, 0.0), 1.0))


@pytest.fixture
def unit_interval() -> MaskedGrid:
    """Fixture providing (0, 1) at h = 1/64."""
    return make_masked_grid(((0.0, 1.0),), 1.0 / 64, Rectangle((0.0,), (1.0,)))


@pytest.fixture
def cone_on_disk(unit_disk: MaskedGrid) -> GridFunction:
    """Fixture providing (1 - |x|)_+ on the unit disk."""
    return GridFunction.from_callable(
        unit_disk, lambda x: np.maximum(1.0 - np.linalg.norm(x, axis=1), 0.0)
    )


@pytest.fixture
def rng() -> np.random.Generator:
    """Fixture providing a seeded generator."""
    return np.random.default_rng(1)

