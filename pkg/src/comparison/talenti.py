"""Talenti-type comparisons between a rearranged solution and a symmetrized problem."""

import logging

import numpy as np
from scipy.integrate import trapezoid

from src.common.errors import DomainError
from src.common.log import kv
from src.common.types import FloatArray
from src.comparison.report import ComparisonReport, Sample
from src.grid_domain import GridFunction
from src.inequality_harness import DEFAULT_TOLERANCES, Tolerances
from src.pde_solvers import RadialSolution
from src.rearrangement import (
    RadialProfile,
    StepProfile,
    concentration,
    decreasing_rearrangement,
    shell_slope,
    slice_cell_measure,
    slice_cells,
    slice_rearrangements,
    unit_ball_measure,
)

logger = logging.getLogger(__name__)


def row_radii(total: float, n: int, h: float) -> FloatArray:
    """``r_k = (k - 1/2) h`` inside the ball of measure ``total``, then its radius."""
    radius = (total / unit_ball_measure(n)) ** (1.0 / n)
    inner = (np.arange(int(np.ceil(radius / h))) + 0.5) * h
    return np.append(inner[inner < radius], radius)


def _ball_measure(n: int, r: float) -> float:
    return unit_ball_measure(n) * r**n


def row_concentration_samples(
    u_rows: list[StepProfile], v_rows: list[StepProfile], n: int, h: float
) -> list[Sample]:
    """``int_{B_r} u^#(., y) <= int_{B_r} v^#(., y)`` for every row ``y`` and radius ``r``."""
    samples = []
    for j, (pu, pv) in enumerate(zip(u_rows, v_rows)):
        if pu.total == 0.0:
            continue
        for r in row_radii(pu.total, n, h):
            s = min(_ball_measure(n, float(r)), pu.total)
            samples.append(Sample(f"y={j},r={r:.17g}", concentration(pu, s), concentration(pv, s)))
    return samples


def _check_axes(u: GridFunction, v: GridFunction) -> None:
    if u.grid.effective_split() != v.grid.effective_split():
        raise DomainError(
            "incompatible symmetrization axes",
            f"{u.grid.effective_split()} != {v.grid.effective_split()}",
        )
    counts_u = [idx.size for idx in slice_cells(u.grid)]
    counts_v = [idx.size for idx in slice_cells(v.grid)]
    if counts_u != counts_v:
        raise DomainError("incompatible symmetrization axes", "row measures differ")


def _unrearranged_worst(u_rows: list[StepProfile], v: GridFunction, n: int, h: float) -> float:
    # v itself, integrated over balls centred in each row of Omega^#
    worst = np.inf
    cell = slice_cell_measure(v.grid)
    centers = v.grid.centers[:, :n]
    for pu, idx in zip(u_rows, slice_cells(v.grid)):
        if idx.size == 0:
            continue
        order = np.argsort(np.sum(centers[idx] ** 2, axis=1), kind="stable")
        cumulative = np.concatenate([[0.0], np.cumsum(v.values[idx][order]) * cell])
        measures = np.arange(idx.size + 1) * cell
        for r in row_radii(pu.total, n, h):
            s = min(_ball_measure(n, float(r)), pu.total)
            worst = min(worst, float(np.interp(s, measures, cumulative)) - concentration(pu, s))
    return float(worst) if np.isfinite(worst) else 0.0


def steiner_concentration_compare(
    u: GridFunction, v: GridFunction, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> ComparisonReport:
    """Row-wise concentrations of ``u^#`` against ``v^#`` (``v`` solves on ``Omega^#``).

    The tolerance is ``c2 h`` times the longest row measure. ``metadata``
    also carries the worst margin against ``v`` without rearranging it.
    """
    _check_axes(u, v)
    n, _ = u.grid.effective_split()
    h = u.grid.h
    u_rows, v_rows = slice_rearrangements(u), slice_rearrangements(v)
    samples = row_concentration_samples(u_rows, v_rows, n, h)
    row_measure = max(p.total for p in u_rows)
    report = ComparisonReport(
        "steiner-concentration",
        tuple(samples),
        tolerances.row_measure(h, row_measure),
        {"h": h, "unrearranged_worst": _unrearranged_worst(u_rows, v, n, h)},
    )
    logger.debug(kv("steiner_concentration", samples=len(samples), worst=report.worst_margin))
    return report


def schwarz_concentration_compare(
    u: GridFunction, v: RadialProfile, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> ComparisonReport:
    """``int_{B_r} u_star <= int_{B_r} v`` at the radial nodes of ``v``."""
    ustar = decreasing_rearrangement(u)
    n = u.grid.dim
    masses = v.ball_integral()
    samples = []
    for r, mass in zip(v.radii, masses):
        s = min(unit_ball_measure(n) * r**n, ustar.total)
        samples.append(Sample(f"r={r:.17g}", concentration(ustar, s), float(mass)))
    return ComparisonReport(
        "schwarz-concentration",
        tuple(samples),
        tolerances.row_measure(u.grid.h, u.grid.measure),
        {"h": u.grid.h},
    )


def pointwise_compare(
    ustar: RadialProfile,
    v: RadialProfile,
    h: float,
    scale: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ComparisonReport:
    """``u_star(r) <= v(r)`` at every radial node of ``v``; tolerance ``c3 h scale``."""
    if ustar.n != v.n:
        raise DomainError("incompatible grids", f"dimension {ustar.n} != {v.n}")
    values = ustar(v.radii)
    samples = tuple(
        Sample(f"r={r:.17g}", float(a), float(b)) for r, a, b in zip(v.radii, values, v.values)
    )
    return ComparisonReport("pointwise", samples, tolerances.pointwise(h, scale), {"h": h})


def gradient_compare(
    ustar: StepProfile,
    v: RadialSolution,
    h: float,
    scale: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ComparisonReport:
    """``|grad u_star| <= |v'|`` at every radial node but the last.

    The slope of ``u_star`` comes from ``shell_slope``. The outermost node is
    dropped because the boundary cells quantize it.
    """
    radii = v.slope.radii[:-1]
    du = shell_slope(ustar, v.n, radii, h)
    samples = tuple(
        Sample(f"r={r:.17g}", float(a), float(b))
        for r, a, b in zip(radii, du, v.slope.values[:-1])
    )
    return ComparisonReport("gradient", samples, tolerances.pointwise(h, scale), {"h": h})


def plaplacian_test_function_check(
    ustar: StepProfile,
    v: RadialSolution,
    p: float,
    h_count: int = 16,
    seed: int = 0,
    spacing: float = 1.0 / 64,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ComparisonReport:
    """``int h(u_star) |u_star'| (|u_star'|^(p-1) - |v'|^(p-1)) <= 0`` for seeded ``h``.

    Each test function is the indicator of a random value band of ``u_star``.
    """
    n = v.n
    radii = v.slope.radii
    du = shell_slope(ustar, n, radii, spacing)
    values = ustar(unit_ball_measure(n) * radii**n)
    surface = n * unit_ball_measure(n) * radii ** (n - 1)
    gap = du * (du ** (p - 1) - v.slope.values ** (p - 1)) * surface
    rng = np.random.default_rng(seed)
    top = float(ustar.values[0]) if len(ustar) else 0.0
    samples = []
    for k in range(h_count):
        lo, hi = np.sort(rng.uniform(0.0, top, 2))
        band = ((values > lo) & (values <= hi)).astype(float)
        samples.append(Sample(f"h={k}", float(trapezoid(band * gap, radii)), 0.0))
    lip = float(np.max(du, initial=0.0))
    tol = tolerances.pointwise(spacing, lip**p * ustar.total)
    metadata = {"h": spacing, "seed": seed, "p": p}
    return ComparisonReport("plaplacian-test", tuple(samples), tol, metadata)
