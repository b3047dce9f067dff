"""Bounded domains on masked grids: measure, quadrature and gradients."""

from src.grid_domain.grid import (
    GridFunction,
    MaskedGrid,
    Split,
    VectorField,
    boundary_fraction,
    gradient_fd,
    integrate,
    is_connected,
    lipschitz_estimate,
    make_masked_grid,
    sample,
    total_variation,
)
from src.grid_domain.io import read_grid_function, write_grid_function
from src.grid_domain.shapes import (
    Annulus,
    Disk,
    ExplicitMask,
    LShape,
    Polygon,
    Rectangle,
    Shape,
    parse_shape,
    tilted_rectangle,
)

__all__ = [
    "Annulus",
    "Disk",
    "ExplicitMask",
    "GridFunction",
    "LShape",
    "MaskedGrid",
    "Polygon",
    "Rectangle",
    "Shape",
    "Split",
    "VectorField",
    "boundary_fraction",
    "gradient_fd",
    "integrate",
    "is_connected",
    "lipschitz_estimate",
    "make_masked_grid",
    "parse_shape",
    "read_grid_function",
    "sample",
    "tilted_rectangle",
    "total_variation",
    "write_grid_function",
]
