"""Masked Cartesian grids, grid functions and finite-difference gradients.

Values live at cell centers and integrals are midpoint sums, so every
rearrangement built from sorting cell values is equimeasurable exactly.
Outside the mask a function is zero (compact support, ``u = 0`` on the
boundary).
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import ndimage

from src.common.errors import DomainError
from src.common.types import BoolArray, FloatArray, IntArray, as_float_array, ensure_type
from src.grid_domain.shapes import ExplicitMask, Shape

logger = logging.getLogger(__name__)

Split = tuple[int, int]


@dataclass(frozen=True, eq=False)
class MaskedGrid:
    """Uniform grid of spacing ``h`` with a boolean occupancy mask.

    Axis ``k`` of ``mask`` is coordinate ``k``; with a split ``(n, m)`` the
    first ``n`` axes are the symmetrized ``x`` variables and the remaining
    ``m`` axes are ``y``.
    ``shape`` is the region the mask was cut from, kept to place the Dirichlet
    boundary inside boundary cells; lattice-built grids have none.
    """

    origin: tuple[float, ...]
    h: float
    mask: BoolArray = field(repr=False)
    split: Split | None = None
    shape: Shape | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        mask = np.array(self.mask, dtype=bool)
        if mask.ndim not in (1, 2):
            raise DomainError("unsupported dimension", str(mask.ndim))
        if len(self.origin) != mask.ndim:
            raise DomainError("origin does not match mask dimension")
        if not self.h > 0:
            raise DomainError("non-positive spacing", str(self.h))
        if not mask.any():
            raise DomainError("degenerate domain")
        if self.split is not None:
            n, m = self.split
            if n < 1 or m < 0 or n + m != mask.ndim:
                raise DomainError("invalid split", str(self.split))
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @property
    def dim(self) -> int:
        return int(self.mask.ndim)

    @property
    def extents(self) -> tuple[int, ...]:
        return tuple(int(e) for e in self.mask.shape)

    @property
    def cell_measure(self) -> float:
        return float(self.h**self.dim)

    @cached_property
    def active_index(self) -> IntArray:
        """Flat (C-order, i.e. lexicographic) indices of active cells."""
        return np.flatnonzero(self.mask)

    @property
    def n_active(self) -> int:
        return int(self.active_index.size)

    @property
    def measure(self) -> float:
        return self.n_active * self.cell_measure

    def axis_centers(self, axis: int) -> FloatArray:
        return self.origin[axis] + (np.arange(self.extents[axis]) + 0.5) * self.h

    @cached_property
    def centers(self) -> FloatArray:
        """``(n_active, dim)`` array of active cell centers."""
        coords = np.unravel_index(self.active_index, self.extents)
        return np.stack(
            [self.origin[k] + (coords[k] + 0.5) * self.h for k in range(self.dim)], axis=1
        )

    def with_split(self, split: Split | None) -> "MaskedGrid":
        return MaskedGrid(self.origin, self.h, self.mask, split, self.shape)

    def effective_split(self) -> Split:
        """The recorded split, or full Schwarz ``(dim, 0)`` when none is set."""
        return self.split if self.split is not None else (self.dim, 0)

    def same_as(self, other: "MaskedGrid") -> bool:
        return (
            self.h == other.h
            and self.origin == other.origin
            and self.mask.shape == other.mask.shape
            and bool(np.array_equal(self.mask, other.mask))
        )

    def permuted(self) -> "MaskedGrid":
        """Transpose of a 2D grid (axis permutation)."""
        return MaskedGrid(self.origin[::-1], self.h, self.mask.T.copy(), None)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real values on the active cells of ``grid`` (zero elsewhere)."""

    grid: MaskedGrid
    values: FloatArray = field(repr=False)

    def __post_init__(self) -> None:
        values = as_float_array(self.values).reshape(-1)
        if values.size != self.grid.n_active:
            raise DomainError(
                "value count does not match active cells", f"{values.size} != {self.grid.n_active}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(
        cls, grid: MaskedGrid, fn: Callable[[FloatArray], FloatArray]
    ) -> "GridFunction":
        """Sample ``fn`` (taking an ``(k, dim)`` array of points) at active centers."""
        return cls(grid, np.asarray(fn(grid.centers), dtype=float))

    @classmethod
    def from_array(cls, grid: MaskedGrid, array: FloatArray) -> "GridFunction":
        return cls(grid, np.asarray(array, dtype=float).reshape(-1)[grid.active_index])

    @classmethod
    def zeros(cls, grid: MaskedGrid) -> "GridFunction":
        return cls(grid, np.zeros(grid.n_active))

    def full(self) -> FloatArray:
        """Zero-extended array over every cell of the grid."""
        out = np.zeros(self.grid.mask.size)
        out[self.grid.active_index] = self.values
        return out.reshape(self.grid.extents)

    def with_values(self, values: FloatArray) -> "GridFunction":
        return GridFunction(self.grid, values)

    def scaled(self, factor: float) -> "GridFunction":
        return GridFunction(self.grid, self.values * factor)

    def require_nonnegative(self) -> "GridFunction":
        if np.any(self.values < 0):
            raise DomainError("negative values", f"min {self.values.min():.3g}")
        return self

    @property
    def max(self) -> float:
        return float(self.values.max(initial=0.0))


@dataclass(frozen=True, eq=False)
class VectorField:
    grid: MaskedGrid
    components: tuple[FloatArray, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.components) != self.grid.dim:
            raise DomainError("component count must equal grid dimension")

    def dot(self, other: "VectorField", axes: Sequence[int] | None = None) -> FloatArray:
        axes = range(self.grid.dim) if axes is None else axes
        return np.sum([self.components[k] * other.components[k] for k in axes], axis=0)

    def norm(self, axes: Sequence[int] | None = None) -> FloatArray:
        return np.sqrt(self.dot(self, axes))

    def scaled(self, factor: FloatArray) -> "VectorField":
        return VectorField(self.grid, tuple(c * factor for c in self.components))


def make_masked_grid(
    bbox: Sequence[tuple[float, float]],
    h: float,
    shape: Shape,
    split: Split | None = None,
) -> MaskedGrid:
    """Grid covering ``bbox`` whose active cells have their center inside ``shape``."""
    if not h > 0:
        raise DomainError("non-positive spacing", str(h))
    widths = [hi - lo for lo, hi in bbox]
    if any(w <= 0 for w in widths):
        raise DomainError("degenerate domain", "empty bounding box")
    if any(h > w for w in widths):
        raise DomainError("resolution too coarse", f"h={h} exceeds extent {min(widths)}")
    extents = tuple(max(1, int(round(w / h))) for w in widths)
    origin = tuple(float(lo) for lo, _ in bbox)
    if isinstance(shape, ExplicitMask):
        mask = np.asarray(shape.mask, dtype=bool)
        if mask.shape != extents:
            raise DomainError("explicit mask shape mismatch", f"{mask.shape} != {extents}")
    else:
        ensure_type(shape, Shape, "shape")
        axes = [origin[k] + (np.arange(extents[k]) + 0.5) * h for k in range(len(extents))]
        points = np.stack([g.reshape(-1) for g in np.meshgrid(*axes, indexing="ij")], axis=1)
        mask = shape.contains(points).reshape(extents)
    if not mask.any():
        raise DomainError("degenerate domain", "no cell center inside the shape")
    region = None if isinstance(shape, ExplicitMask) else shape
    grid = MaskedGrid(origin, float(h), mask, split, region)
    logger.debug("grid dim=%d extents=%s active=%d", grid.dim, extents, grid.n_active)
    return grid


def integrate(f: GridFunction) -> float:
    """Midpoint rule: ``sum(values) * h^dim``."""
    return float(np.sum(f.values) * f.grid.cell_measure)


def gradient_fd(f: GridFunction) -> VectorField:
    """Central differences inside, one-sided toward an inactive (zero) neighbor."""
    grid = f.grid
    padded_values = np.pad(f.full(), 1)
    padded_mask = np.pad(grid.mask, 1)
    inner = tuple(slice(1, -1) for _ in range(grid.dim))
    components = []
    for axis in range(grid.dim):
        fwd = tuple(slice(2, None) if k == axis else slice(1, -1) for k in range(grid.dim))
        bwd = tuple(slice(None, -2) if k == axis else slice(1, -1) for k in range(grid.dim))
        centre = padded_values[inner]
        up_active = padded_mask[fwd]
        down_active = padded_mask[bwd]
        central = (padded_values[fwd] - padded_values[bwd]) / (2 * grid.h)
        toward_up = (0.0 - centre) / grid.h
        toward_down = (centre - 0.0) / grid.h
        d = np.where(
            up_active & down_active,
            central,
            np.where(up_active, toward_down, np.where(down_active, toward_up, 0.0)),
        )
        components.append(d.reshape(-1)[grid.active_index])
    return VectorField(grid, tuple(components))


def lipschitz_estimate(f: GridFunction) -> float:
    """Largest forward-difference slope of the zero-extended function."""
    padded = np.pad(f.full(), 1)
    slopes = [np.abs(np.diff(padded, axis=k)).max(initial=0.0) for k in range(f.grid.dim)]
    return float(max(slopes) / f.grid.h)


def total_variation(f: GridFunction) -> float:
    """Face jumps of the zero-extended function, each weighted by the face measure ``h^(dim-1)``."""
    padded = np.pad(f.full(), 1)
    jumps = sum(float(np.abs(np.diff(padded, axis=k)).sum()) for k in range(f.grid.dim))
    return jumps * f.grid.h ** (f.grid.dim - 1)


def boundary_fraction(
    grid: MaskedGrid, cells: IntArray, axis: int, step: int, iterations: int = 52
) -> FloatArray:
    """Distance in units of ``h`` from active ``cells`` to the boundary toward ``step * e_axis``.

    Bisection on ``grid.shape`` between each center and its inactive neighbour.
    Without a shape the boundary is the shared face, at ``1/2``.
    """
    if grid.shape is None:
        return np.full(len(cells), 0.5)
    start = grid.centers[cells]
    lo, hi = np.zeros(len(cells)), np.ones(len(cells))
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        points = start.copy()
        points[:, axis] += step * mid * grid.h
        inside = grid.shape.contains(points)
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return hi


def sample(f: GridFunction, point: Sequence[float]) -> float:
    """Multilinear interpolation of the zero-extended function at ``point``."""
    grid = f.grid
    coords = [[(point[k] - grid.origin[k]) / grid.h - 0.5] for k in range(grid.dim)]
    value = ndimage.map_coordinates(f.full(), coords, order=1, mode="constant", cval=0.0)
    return float(value[0])


def is_connected(grid: MaskedGrid) -> bool:
    """Face-connectivity of the active cells."""
    _, count = ndimage.label(grid.mask)
    return count == 1
