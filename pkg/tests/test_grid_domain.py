"""Tests for the grid_domain module."""

from pathlib import Path

import numpy as np
import pytest

from src.common import ConfigError, DomainError
from src.grid_domain import (
    ExplicitMask,
    GridFunction,
    LShape,
    MaskedGrid,
    Rectangle,
    gradient_fd,
    integrate,
    is_connected,
    lipschitz_estimate,
    make_masked_grid,
    parse_shape,
    read_grid_function,
    sample,
    total_variation,
    write_grid_function,
)


class TestMakeMaskedGrid:
    """Test grid construction from shapes."""

    def test_unit_square_cells(self, unit_square: MaskedGrid) -> None:
        """The square at h = 1/32 has 32 x 32 active cells and measure 1."""
        assert unit_square.extents == (32, 32)
        assert unit_square.n_active == 1024
        assert unit_square.measure == pytest.approx(1.0)

    def test_disk_measure(self, unit_disk: MaskedGrid) -> None:
        """The masked disk approximates pi to first order in h."""
        assert unit_disk.measure == pytest.approx(np.pi, abs=0.05)

    def test_lshape_measure(self) -> None:
        """The L-shape keeps three quarters of the square."""
        shape, bbox = parse_shape("lshape")
        grid = make_masked_grid(bbox, 1.0 / 32, shape)
        assert isinstance(shape, LShape)
        assert grid.measure == pytest.approx(0.75)

    def test_nonpositive_spacing(self) -> None:
        """h <= 0 is rejected."""
        with pytest.raises(DomainError):
            make_masked_grid(((0.0, 1.0),), 0.0, Rectangle((0.0,), (1.0,)))

    def test_resolution_too_coarse(self) -> None:
        """h larger than the domain extent is rejected."""
        with pytest.raises(DomainError, match="resolution too coarse"):
            make_masked_grid(((0.0, 0.1),), 0.5, Rectangle((0.0,), (0.1,)))

    def test_empty_shape_is_degenerate(self) -> None:
        """A shape missing every cell center gives a degenerate domain."""
        with pytest.raises(DomainError, match="degenerate domain"):
            make_masked_grid(((0.0, 1.0),), 0.25, Rectangle((2.0,), (3.0,)))

    def test_explicit_mask(self) -> None:
        """An explicit mask is used as given."""
        mask = np.array([[True, False], [True, True]])
        grid = make_masked_grid(((0.0, 1.0), (0.0, 1.0)), 0.5, ExplicitMask(mask))
        assert grid.n_active == 3

    def test_invalid_split(self) -> None:
        """The split must cover every axis."""
        with pytest.raises(DomainError, match="invalid split"):
            MaskedGrid((0.0, 0.0), 0.5, np.ones((2, 2), dtype=bool), split=(1, 0))


class TestParseShape:
    """Test shape spec parsing."""

    def test_disk_bbox(self) -> None:
        """'disk r' is centered at the origin."""
        _, bbox = parse_shape("disk 0.5")
        assert bbox == ((-0.5, 0.5), (-0.5, 0.5))

    def test_tilted_rectangle_area(self) -> None:
        """A tilted rectangle keeps its area."""
        shape, bbox = parse_shape("tilted 0 0 1 0.5 30")
        grid = make_masked_grid(bbox, 1.0 / 64, shape)
        assert grid.measure == pytest.approx(0.5, abs=0.03)

    def test_bad_spec(self) -> None:
        """Unknown shapes raise ConfigError."""
        with pytest.raises(ConfigError, match="bad shape spec"):
            parse_shape("hexagon 1")


class TestGridFunction:
    """Test values, quadrature and gradients."""

    def test_value_count_checked(self, unit_square: MaskedGrid) -> None:
        """Values must match the active cells."""
        with pytest.raises(DomainError):
            GridFunction(unit_square, np.zeros(3))

    def test_integrate_constant(self, unit_disk: MaskedGrid) -> None:
        """The midpoint rule integrates constants exactly."""
        f = GridFunction(unit_disk, np.full(unit_disk.n_active, 2.0))
        assert integrate(f) == pytest.approx(2.0 * unit_disk.measure)

    def test_full_zero_extends(self, cone_on_disk: GridFunction) -> None:
        """Inactive cells hold zero in the full array."""
        full = cone_on_disk.full()
        assert full.shape == cone_on_disk.grid.extents
        assert np.all(full[~cone_on_disk.grid.mask] == 0.0)

    def test_gradient_of_linear_function(self, unit_square: MaskedGrid) -> None:
        """Central differences are exact for u = 2x + y away from the boundary."""
        u = GridFunction.from_callable(unit_square, lambda x: 2 * x[:, 0] + x[:, 1])
        grad = gradient_fd(u)
        inner = np.all((unit_square.centers > 0.05) & (unit_square.centers < 0.95), axis=1)
        assert np.allclose(grad.components[0][inner], 2.0)
        assert np.allclose(grad.components[1][inner], 1.0)

    def test_gradient_one_sided_at_boundary(self, unit_interval: MaskedGrid) -> None:
        """Next to an inactive cell the difference is taken toward zero."""
        u = GridFunction(unit_interval, np.ones(unit_interval.n_active))
        grad = gradient_fd(u).components[0]
        h = unit_interval.h
        assert grad[0] == pytest.approx(1.0 / h)
        assert grad[-1] == pytest.approx(-1.0 / h)
        assert np.all(grad[1:-1] == 0.0)

    def test_cone_lipschitz(self, cone_on_disk: GridFunction) -> None:
        """The zero-extended cone has axis slopes at most 1."""
        assert lipschitz_estimate(cone_on_disk) <= 1.0 + 1e-9

    def test_total_variation_of_indicators(
        self, unit_interval: MaskedGrid, unit_square: MaskedGrid
    ) -> None:
        """An indicator jumps by its height across its perimeter."""
        assert total_variation(GridFunction(unit_interval, np.ones(unit_interval.n_active))) == 2.0
        square = GridFunction(unit_square, np.full(unit_square.n_active, 0.5))
        assert total_variation(square) == pytest.approx(2.0)

    def test_sample_bilinear(self, unit_square: MaskedGrid) -> None:
        """Interpolation reproduces linear functions between cell centers."""
        u = GridFunction.from_callable(unit_square, lambda x: x[:, 0] + 3 * x[:, 1])
        assert sample(u, (0.3, 0.4)) == pytest.approx(1.5)


class TestConnectivity:
    """Test face connectivity of masks."""

    def test_square_connected(self, unit_square: MaskedGrid) -> None:
        """A square is one component."""
        assert is_connected(unit_square)

    def test_two_blocks(self) -> None:
        """Blocks touching at a corner only are two components."""
        mask = np.array([[True, False], [False, True]])
        assert not is_connected(MaskedGrid((0.0, 0.0), 1.0, mask))


class TestGridFunctionIO:
    """Test text serialization."""

    def test_write_then_read(self, cone_on_disk: GridFunction, tmp_path: Path) -> None:
        """Values, mask and geometry survive a round trip in full precision."""
        path = tmp_path / "cone.grid"
        write_grid_function(cone_on_disk, path)
        back = read_grid_function(path)
        assert back.grid.same_as(cone_on_disk.grid)
        assert np.array_equal(back.values, cone_on_disk.values)
