"""Tests for the comparison module."""

import numpy as np
import pytest

from src.common import DomainError
from src.comparison import (
    ComparisonReport,
    Sample,
    dual_test_function_check,
    gradient_compare,
    plaplacian_test_function_check,
    pointwise_compare,
    row_radii,
    schwarz_concentration_compare,
    steiner_concentration_compare,
    symmetric_test_functions,
)
from src.grid_domain import GridFunction, MaskedGrid, Rectangle, make_masked_grid, parse_shape
from src.inequality_harness import DEFAULT_TOLERANCES
from src.pde_solvers import solve_poisson_masked, solve_radial_poisson, solve_steiner_problem
from src.rearrangement import (
    RadialProfile,
    decreasing_rearrangement,
    schwarz_rearrangement,
    steiner_symmetrization,
    symmetrize,
)
from tests.helpers import tent_sum


def _ones(grid: MaskedGrid) -> GridFunction:
    return GridFunction(grid, np.ones(grid.n_active))


class TestComparisonReport:
    """Test margins and verdicts of comparison families."""

    def test_margin_is_rhs_minus_lhs(self) -> None:
        """A sample's margin is positive when the claim holds."""
        assert Sample("r=0", 1.0, 3.0).margin == 2.0

    def test_worst_sample_decides(self) -> None:
        """The smallest margin is compared with the tolerance."""
        samples = (Sample("a", 0.0, 1.0), Sample("b", 1.0, 0.9))
        report = ComparisonReport("pointwise", samples, 0.05)
        assert report.worst == samples[1]
        assert not report.passed
        assert ComparisonReport("pointwise", samples, 0.2).passed

    def test_frame(self) -> None:
        """One frame row per sample with a per-sample verdict."""
        samples = (Sample("a", 0.0, 1.0), Sample("b", 1.0, 0.0))
        frame = ComparisonReport("gradient", samples, 0.0).to_frame()
        assert list(frame.columns) == ["kind", "param", "lhs", "rhs", "margin", "pass"]
        assert frame["pass"].tolist() == [True, False]

    def test_empty_passes(self) -> None:
        """No samples means nothing to violate."""
        report = ComparisonReport("dual", (), 0.0)
        assert report.worst is None
        assert report.passed

    def test_unknown_kind(self) -> None:
        """Only the known comparison kinds exist."""
        with pytest.raises(ValueError):
            ComparisonReport("sideways", (), 0.0)


class TestRowRadii:
    """Test the radii sampled in each row."""

    def test_unit_disk(self) -> None:
        """Half-cell radii inside the ball, then the radius itself."""
        assert np.allclose(row_radii(np.pi, 2, 0.25), [0.125, 0.375, 0.625, 0.875, 1.0])


class TestSteinerComparison:
    """Test the row-wise concentration comparison."""

    def test_concentrations(self, split_square: MaskedGrid) -> None:
        """u^# is less concentrated than the solution with datum f^#."""
        f = tent_sum(split_square, 12)
        u = solve_poisson_masked(split_square, f)
        f_sharp = steiner_symmetrization(f)
        v = solve_steiner_problem(f_sharp.grid, f_sharp)
        report = steiner_concentration_compare(u, v)
        assert report.kind == "steiner-concentration"
        assert len(report.samples) > 0
        assert "unrearranged_worst" in report.metadata
        assert report.passed

    def test_tilted_rectangle(self) -> None:
        """Every row of a tilted rectangle is less concentrated than on Omega^#."""
        shape, bbox = parse_shape("tilted 0 0 1 0.5 30")
        grid = make_masked_grid(bbox, 1.0 / 32, shape, split=(1, 1))
        f = _ones(grid)
        f_sharp = steiner_symmetrization(f)
        u = solve_poisson_masked(grid, f)
        v = solve_steiner_problem(f_sharp.grid, f_sharp)
        report = steiner_concentration_compare(u, v)
        assert report.worst_margin >= -report.tolerance
        assert report.passed

    def test_symmetric_domain_gives_equality(self) -> None:
        """When Omega = Omega^# both problems coincide."""
        grid = make_masked_grid(
            ((-0.5, 0.5), (0.0, 1.0)), 1.0 / 32, Rectangle((-0.5, 0.0), (0.5, 1.0)), split=(1, 1)
        )
        f = _ones(grid)
        f_sharp = steiner_symmetrization(f)
        u = solve_poisson_masked(grid, f)
        v = solve_steiner_problem(f_sharp.grid, f_sharp)
        assert steiner_concentration_compare(u, v).worst_margin >= -1e-8

    def test_axes_must_match(self, split_square: MaskedGrid, unit_square: MaskedGrid) -> None:
        """Both sides use the same split."""
        u = tent_sum(split_square, 1)
        v = tent_sum(unit_square, 1)
        with pytest.raises(DomainError, match="incompatible symmetrization axes"):
            steiner_concentration_compare(u, v)


class TestSchwarzComparison:
    """Test the radial comparisons on the unit disk."""

    @pytest.fixture
    def solved(self, unit_disk: MaskedGrid):
        """Grid solution with f = 1 and the radial solution with f* = 1."""
        f = _ones(unit_disk)
        u = solve_poisson_masked(unit_disk, f)
        v = solve_radial_poisson(decreasing_rearrangement(f), 2)
        return u, v

    def test_concentration(self, solved) -> None:
        """Ball integrals of u_star stay below those of v."""
        u, v = solved
        report = schwarz_concentration_compare(u, v.v)
        assert len(report.samples) == v.v.radii.size
        assert report.passed

    def test_pointwise(self, solved, unit_disk: MaskedGrid) -> None:
        """u_star <= v node by node."""
        u, v = solved
        ustar = schwarz_rearrangement(u).profile
        assert pointwise_compare(ustar, v.v, unit_disk.h, 1.0).passed

    def test_pointwise_dimension(self, solved, unit_disk: MaskedGrid) -> None:
        """Profiles of different dimensions do not compare."""
        _, v = solved
        line = RadialProfile(1, np.array([0.0, 1.0]), np.array([1.0, 0.0]))
        with pytest.raises(DomainError):
            pointwise_compare(line, v.v, unit_disk.h, 1.0)

    def test_gradient(self, solved, unit_disk: MaskedGrid) -> None:
        """|grad u_star| <= |v'| except at the outermost node."""
        u, v = solved
        report = gradient_compare(decreasing_rearrangement(u), v, unit_disk.h, 1.0)
        assert len(report.samples) == v.slope.radii.size - 1
        assert report.passed

    def test_plaplacian_test_functions(self, solved, unit_disk: MaskedGrid) -> None:
        """The seeded band test functions are reproducible and pass."""
        u, v = solved
        ustar = decreasing_rearrangement(u)
        first = plaplacian_test_function_check(
            ustar, v, 2.0, h_count=8, seed=3, spacing=unit_disk.h
        )
        second = plaplacian_test_function_check(
            ustar, v, 2.0, h_count=8, seed=3, spacing=unit_disk.h
        )
        assert len(first.samples) == 8
        assert first.samples == second.samples
        assert first.passed


class TestTalentiOnShapes:
    """Pointwise and gradient comparisons away from the disk."""

    @pytest.mark.parametrize("spec", ["rectangle 0 1 0 1", "lshape", "tilted 0 0 1 0.5 30"])
    @pytest.mark.parametrize("seed", [None, 2])
    def test_pointwise_and_gradient(self, spec: str, seed: int | None) -> None:
        """f = 1 and a seeded tent sum on each shape."""
        shape, bbox = parse_shape(spec)
        grid = make_masked_grid(bbox, 1.0 / 32, shape)
        f = _ones(grid) if seed is None else tent_sum(grid, seed)
        u = solve_poisson_masked(grid, f)
        v = solve_radial_poisson(decreasing_rearrangement(f), 2)
        ustar = schwarz_rearrangement(u).profile
        assert pointwise_compare(ustar, v.v, grid.h, f.max).passed
        assert gradient_compare(decreasing_rearrangement(u), v, grid.h, f.max).passed


class TestDualCheck:
    """Test the symmetric test-function form of the comparison."""

    def test_test_functions_are_symmetric(self, cone_on_disk: GridFunction) -> None:
        """Every generated test function is its own symmetrization."""
        grid = symmetrize(cone_on_disk).grid
        for test in symmetric_test_functions(grid, 4, seed=1):
            assert np.array_equal(symmetrize(test).values, test.values)
            assert test.values.min() >= 0.0

    def test_verdicts_agree_when_dominated(self, cone_on_disk: GridFunction) -> None:
        """v = 2u dominates u in both forms."""
        report = dual_test_function_check(cone_on_disk, cone_on_disk.scaled(2.0), h_count=16)
        assert report.passed
        assert report.metadata["direct_pass"]
        assert report.metadata["agree"]

    def test_verdicts_agree_when_violated(self, cone_on_disk: GridFunction) -> None:
        """v = u / 2 fails both forms once the gap exceeds the tolerance."""
        u = cone_on_disk.scaled(10.0)
        report = dual_test_function_check(u, u.scaled(0.5), h_count=16)
        assert not report.passed
        assert not report.metadata["direct_pass"]
        assert report.metadata["agree"]

    def test_same_grid_required(self, cone_on_disk: GridFunction, unit_square: MaskedGrid) -> None:
        """u and v share one grid."""
        with pytest.raises(DomainError, match="incompatible grids"):
            dual_test_function_check(cone_on_disk, tent_sum(unit_square, 1))

    def test_verdicts_agree_on_clear_cases(self, cone_on_disk: GridFunction) -> None:
        """Scaled pairs and crossing pairs agree wherever the direct margin is decisive."""
        u = cone_on_disk.scaled(10.0)
        pairs = [(u, u.scaled(c)) for c in np.linspace(0.3, 3.0, 15)]
        ones = np.ones(cone_on_disk.grid.n_active)
        crossing = [(100.0, 40.0), (80.0, 30.0), (120.0, 50.0), (60.0, 25.0), (100.0, 45.0)]
        for peak, level in crossing:
            # peaked u against a flat v of larger mass: the concentrations cross
            pairs.append((cone_on_disk.scaled(peak), cone_on_disk.with_values(level * ones)))
        tol = DEFAULT_TOLERANCES.row_measure(cone_on_disk.grid.h, cone_on_disk.grid.measure)
        decisive = 0
        for first, second in pairs:
            report = dual_test_function_check(first, second, h_count=64, seed=5)
            if abs(report.metadata["direct_worst"]) > 2.0 * tol:
                decisive += 1
                assert report.metadata["agree"]
        assert decisive >= 8
