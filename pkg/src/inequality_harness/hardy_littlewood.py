"""Hardy-Littlewood inequality and the nested-level-set characterization of equality."""

import logging

import numpy as np

from src.common.log import kv
from src.grid_domain import GridFunction
from src.inequality_harness.report import LESS_EQUAL, VerificationReport
from src.inequality_harness.tolerance import DEFAULT_TOLERANCES, Tolerances
from src.rearrangement import (
    decreasing_rearrangement,
    ensure_same_grid,
    product_integral,
    symmetrize,
)

logger = logging.getLogger(__name__)

# pairs compared per vectorised block in the exhaustive scan
_BLOCK = 512


def pairing(u: GridFunction, w: GridFunction) -> float:
    """``sum u w h^dim``."""
    ensure_same_grid(u, w)
    return float(np.dot(u.values, w.values) * u.grid.cell_measure)


def hardy_littlewood_check(
    u: GridFunction, w: GridFunction, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> VerificationReport:
    """``int u w <= int u* w*``.

    The discrete statement is the rearrangement inequality for sorted
    sequences, exact up to rounding, so the tolerance is relative only.
    """
    lhs = pairing(u, w)
    rhs = product_integral(decreasing_rearrangement(u), decreasing_rearrangement(w))
    report = VerificationReport(
        "hardy_littlewood",
        lhs,
        rhs,
        tolerances.hl(lhs, rhs),
        LESS_EQUAL,
        {"h": u.grid.h},
    )
    logger.debug(kv("hardy_littlewood", lhs=lhs, rhs=rhs, passed=report.passed))
    return report


def hl_equality_residual(u: GridFunction, w: GridFunction) -> float:
    """``int u* w* - int u w``; zero certifies the equality case."""
    report = hardy_littlewood_check(u, w)
    return report.rhs - report.lhs


def _violations(du: np.ndarray, dw: np.ndarray) -> bool:
    return bool(np.any(du * dw < 0))


def nested_levels_check(
    u: GridFunction, w: GridFunction, pair_budget: int = 1_000_000, seed: int = 0
) -> bool:
    """No pair of cells with ``(u(x) - u(x')) (w(x) - w(x')) < 0``.

    Scans every pair when ``cells^2 <= pair_budget``, otherwise
    ``pair_budget`` pairs drawn with ``seed``.
    """
    ensure_same_grid(u, w)
    a, b = u.values, w.values
    count = a.size
    if count * count <= pair_budget:
        for start in range(0, count, _BLOCK):
            block = slice(start, start + _BLOCK)
            if _violations(a[block, None] - a[None, :], b[block, None] - b[None, :]):
                return False
        return True
    rng = np.random.default_rng(seed)
    first = rng.integers(0, count, pair_budget)
    second = rng.integers(0, count, pair_budget)
    logger.debug(kv("nested_levels_sampled", cells=count, pairs=pair_budget, seed=seed))
    return not _violations(a[first] - a[second], b[first] - b[second])


def symmetrized_pair(u: GridFunction, w: GridFunction) -> tuple[GridFunction, GridFunction]:
    """``(u^#, w^#)`` on the common symmetrized grid (Schwarz when ``u`` has no split)."""
    ensure_same_grid(u, w)
    return symmetrize(u), symmetrize(GridFunction(u.grid, w.values))


def equality_gap(
    u: GridFunction, w: GridFunction, u_sharp: GridFunction, w_sharp: GridFunction
) -> float:
    """``int u^# w^# - int u w``, the defect in the equality hypothesis of the couple forms."""
    return pairing(u_sharp, w_sharp) - pairing(u, w)


def equality_holds(
    u: GridFunction,
    w: GridFunction,
    u_sharp: GridFunction,
    w_sharp: GridFunction,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    gap = equality_gap(u, w, u_sharp, w_sharp)
    scale = max(abs(pairing(u_sharp, w_sharp)), np.finfo(float).tiny)
    if gap > tolerances.hl_equality * scale:
        logger.warning(kv("hl_equality_hypothesis_fails", gap=gap, scale=scale))
        return False
    return True
