"""Concentration comparison through symmetric test functions.

``int_{B_r} u^# <= int_{B_r} v^#`` for every ball of every row holds exactly
when ``int u^# h <= int v^# h`` for every nonnegative ``h = h^#``. Both sides
of the equivalence are checked and their verdicts compared.
"""

import logging

import numpy as np

from src.common.errors import DomainError
from src.common.log import kv
from src.comparison.report import ComparisonReport, Sample
from src.comparison.talenti import row_concentration_samples
from src.grid_domain import GridFunction, MaskedGrid
from src.inequality_harness import DEFAULT_TOLERANCES, Tolerances, pairing
from src.rearrangement import slice_cells, slice_rearrangements, symmetrize

logger = logging.getLogger(__name__)


def symmetric_test_functions(grid: MaskedGrid, count: int, seed: int) -> list[GridFunction]:
    """Seeded ``h = h^#`` on a symmetrized grid.

    Even draws symmetrize uniform noise; odd draws symmetrize the indicator
    of a random set of cells in one random row, which gives a centered ball
    of that row.
    """
    rng = np.random.default_rng(seed)
    rows = [idx for idx in slice_cells(grid) if idx.size]
    out = []
    for k in range(count):
        if k % 2 == 0:
            values = rng.uniform(0.0, 1.0, grid.n_active)
        else:
            row = rows[rng.integers(len(rows))]
            chosen = rng.choice(row, size=int(rng.integers(1, row.size + 1)), replace=False)
            values = np.zeros(grid.n_active)
            values[chosen] = 1.0
        out.append(GridFunction(grid, symmetrize(GridFunction(grid, values)).values))
    return out


def dual_test_function_check(
    u: GridFunction,
    v: GridFunction,
    h_count: int = 64,
    seed: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ComparisonReport:
    """``int u^# h <= int v^# h`` for ``h_count`` seeded ``h = h^#``.

    ``metadata`` carries the direct concentration verdict (``direct_pass``)
    and whether both verdicts agree.
    """
    if not u.grid.same_as(v.grid):
        raise DomainError("incompatible grids", "u and v must share a grid")
    u_sharp = symmetrize(u)
    v_sharp = symmetrize(GridFunction(u.grid, v.values))
    target = u_sharp.grid
    v_sharp = GridFunction(target, v_sharp.values)
    tests = symmetric_test_functions(target, h_count, seed)
    samples = tuple(
        Sample(f"h={k}", pairing(u_sharp, test), pairing(v_sharp, test))
        for k, test in enumerate(tests)
    )
    h = u.grid.h
    bound = max((test.max for test in tests), default=0.0)
    tol = tolerances.row_measure(h, u.grid.measure) * bound

    n, _ = target.effective_split()
    u_rows, v_rows = slice_rearrangements(u_sharp), slice_rearrangements(v_sharp)
    direct = row_concentration_samples(u_rows, v_rows, n, h)
    direct_worst = min((s.margin for s in direct), default=0.0)
    direct_pass = direct_worst >= -tolerances.row_measure(h, max(p.total for p in u_rows))

    report = ComparisonReport(
        "dual",
        samples,
        tol,
        {"h": h, "seed": seed, "direct_worst": direct_worst, "direct_pass": direct_pass},
    )
    agree = report.passed == direct_pass
    logger.debug(kv("dual_check", tests=h_count, dual=report.passed, direct=direct_pass))
    return report.with_metadata(agree=agree)
