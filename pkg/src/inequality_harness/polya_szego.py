"""Polya-Szego type inequalities for a couple of functions.

Gradients are finite differences on the grid (``gradient_fd``); the
symmetrized functions live on their own centered grids, so both sides are
sums over different cell sets of the same spacing.
"""

import logging
from collections.abc import Callable

import numpy as np
from scipy.integrate import trapezoid

from src.common.errors import HypothesisError, ProfileError
from src.common.log import kv
from src.common.types import FloatArray
from src.grid_domain import GridFunction, gradient_fd, lipschitz_estimate
from src.inequality_harness.hardy_littlewood import equality_holds, symmetrized_pair
from src.inequality_harness.report import VerificationReport
from src.inequality_harness.tolerance import DEFAULT_TOLERANCES, Tolerances
from src.rearrangement import (
    StepProfile,
    chain_rule_gradient,
    check_key_condition,
    check_no_flat_zones,
    check_no_plateaus,
    decreasing_rearrangement,
    ensure_same_grid,
    extremal_for,
    profile_slope,
    radial_nodes,
    schwarz_rearrangement,
    shell_slope,
    shell_window,
    steiner_extremal_for,
    steiner_grid,
    steiner_symmetrization,
    unit_ball_measure,
)

logger = logging.getLogger(__name__)


def _axis_pairing(u: GridFunction, w: GridFunction, axes: list[int]) -> float:
    gu, gw = gradient_fd(u), gradient_fd(w)
    return float(np.sum(gu.dot(gw, axes)) * u.grid.cell_measure)


def ps_couple_check(
    u: GridFunction, w: GridFunction, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> VerificationReport:
    """``int grad u . grad w >= int grad u^# . grad w^#`` split into ``x`` and ``y`` parts.

    Without a split (or with ``m = 0``) only the total is reported. The
    report is flagged when ``int u w = int u^# w^#`` fails, since the
    inequality is then outside its hypotheses.
    """
    ensure_same_grid(u, w)
    u_sharp, w_sharp = symmetrized_pair(u, w)
    hypothesis_ok = equality_holds(u, w, u_sharp, w_sharp, tolerances)
    n, m = u.grid.effective_split()
    h = u.grid.h
    tol = tolerances.gradient_pair(
        h, lipschitz_estimate(u), lipschitz_estimate(w), u.grid.measure
    )
    meta = {"h": h, "split": f"{n},{m}"}
    subs: list[VerificationReport] = []
    if m > 0:
        x_axes = list(range(n))
        subs.append(
            VerificationReport(
                "ps_couple.x",
                _axis_pairing(u, w, x_axes),
                _axis_pairing(u_sharp, w_sharp, x_axes),
                tol,
                metadata=meta,
                hypothesis_ok=hypothesis_ok,
            )
        )
        for axis in range(n, n + m):
            subs.append(
                VerificationReport(
                    f"ps_couple.y{axis - n + 1}",
                    _axis_pairing(u, w, [axis]),
                    _axis_pairing(u_sharp, w_sharp, [axis]),
                    tol,
                    metadata=meta,
                    hypothesis_ok=hypothesis_ok,
                )
            )
    axes = list(range(n + m))
    report = VerificationReport(
        "ps_couple",
        _axis_pairing(u, w, axes),
        _axis_pairing(u_sharp, w_sharp, axes),
        tol,
        metadata=meta,
        hypothesis_ok=hypothesis_ok,
        sub_reports=tuple(subs),
    )
    logger.debug(kv("ps_couple", lhs=report.lhs, rhs=report.rhs, hypothesis_ok=hypothesis_ok))
    return report


def _radial_integral(n: int, radii: FloatArray, integrand: FloatArray) -> float:
    surface = n * unit_ball_measure(n) * radii ** (n - 1)
    return float(trapezoid(integrand * surface, radii))


def schwarz_couple_check(
    u: GridFunction, w: GridFunction, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> VerificationReport:
    """``int grad u . grad w >= int |grad u_star| |grad w_star|`` on radial profiles."""
    ensure_same_grid(u, w)
    unsplit = u.grid.with_split(None)
    u0, w0 = GridFunction(unsplit, u.values), GridFunction(unsplit, w.values)
    u_sharp, w_sharp = symmetrized_pair(u0, w0)
    hypothesis_ok = equality_holds(u0, w0, u_sharp, w_sharp, tolerances)
    n = u.grid.dim
    ustar, wstar = decreasing_rearrangement(u), decreasing_rearrangement(w)
    h = u.grid.h
    radii = radial_nodes((u.grid.measure / unit_ball_measure(n)) ** (1.0 / n))
    slopes = shell_slope(ustar, n, radii, h) * shell_slope(wstar, n, radii, h)
    lhs = _axis_pairing(u0, w0, list(range(n)))
    rhs = _radial_integral(n, radii, slopes)
    tol = tolerances.gradient_pair(
        u.grid.h, lipschitz_estimate(u), lipschitz_estimate(w), u.grid.measure
    )
    return VerificationReport(
        "schwarz_couple", lhs, rhs, tol, metadata={"h": u.grid.h}, hypothesis_ok=hypothesis_ok
    )


def _require_steiner_symmetric(W: GridFunction) -> None:
    target, _ = steiner_grid(W.grid)
    if not target.same_as(W.grid):
        raise ProfileError("W is not Steiner-symmetric", "domain is not symmetric")
    again = steiner_symmetrization(W)
    if not np.array_equal(again.values, W.values):
        raise ProfileError("W is not Steiner-symmetric", "slices are not symmetric decreasing")


def weak_form_check(
    u: GridFunction, W: GridFunction, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> VerificationReport:
    """``-int w Lap u >= int grad u^# . grad W`` with ``w`` the slice-wise extremal of ``W``.

    ``-int w Lap u`` is evaluated after summation by parts as
    ``int grad u . grad w``.
    """
    split = u.grid.effective_split()
    u = GridFunction(u.grid.with_split(split), u.values)
    W = GridFunction(W.grid.with_split(split), W.values)
    _require_steiner_symmetric(W)
    w = steiner_extremal_for(u, W)
    u_sharp = steiner_symmetrization(u)
    u_sharp = GridFunction(W.grid, u_sharp.values)
    axes = list(range(u.grid.dim))
    lhs = _axis_pairing(u, w, axes)
    rhs = _axis_pairing(u_sharp, W, axes)
    tol = tolerances.gradient_pair(
        u.grid.h, lipschitz_estimate(u), lipschitz_estimate(W), u.grid.measure
    )
    logger.debug(kv("weak_form", lhs=lhs, rhs=rhs))
    return VerificationReport("weak_form", lhs, rhs, tol, metadata={"h": u.grid.h})


def _measure_gradient(n: int, s: FloatArray) -> FloatArray:
    # |grad f_star| = n omega^(1/n) s^(1 - 1/n) |f*'(s)| on the sphere of measure s
    return n * unit_ball_measure(n) ** (1.0 / n) * s ** (1.0 - 1.0 / n)


def nonlinear_ps_check(
    u: GridFunction,
    W: StepProfile,
    p: float = 2.0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """``int |grad u|^(p-2) grad u . grad w >= int |grad u_star|^(p-1) |grad w_star|``.

    ``w = extremal_for(u, W)`` with its gradient from the chain rule; the
    right side is a sum over the measure axis in cell-sized steps.
    """
    if p <= 1:
        raise ProfileError("exponent out of range", f"p={p}")
    ustar = decreasing_rearrangement(u)
    ok, _ = check_key_condition(W, ustar)
    if not ok:
        raise HypothesisError("Lemma hypothesis violated", "W drops where u* is flat")
    n = u.grid.dim
    cell = u.grid.cell_measure
    grad_u = gradient_fd(u)
    grad_w = chain_rule_gradient(u, W)
    norm = grad_u.norm()
    power = np.power(norm, p - 2, out=np.zeros_like(norm), where=norm > 0)
    lhs = float(np.sum(power * grad_u.dot(grad_w)) * cell)

    s = (np.arange(u.grid.n_active) + 0.5) * cell
    radial = _measure_gradient(n, s)
    window = shell_window(s, n, u.grid.h, ustar.total)
    du = np.abs(profile_slope(ustar, s, window))
    dw = np.abs(profile_slope(W, s, window))
    rhs = float(np.sum(radial**p * du ** (p - 1) * dw) * cell)

    lip_u = lipschitz_estimate(u)
    lip_w = lipschitz_estimate(extremal_for(u, W))
    tol = tolerances.gradient_pair(u.grid.h, lip_u ** (p - 1), lip_w, u.grid.measure)
    meta = {
        "h": u.grid.h,
        "p": p,
        "no_flat_zones": check_no_flat_zones(u),
        "no_plateaus": check_no_plateaus(ustar, cell),
    }
    logger.debug(kv("nonlinear_ps", p=p, lhs=lhs, rhs=rhs))
    return VerificationReport("nonlinear_ps", lhs, rhs, tol, metadata=meta)


def weighted_ps_check(
    u: GridFunction,
    A: Callable[[FloatArray], FloatArray],
    p: float = 2.0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """``int A(u) |grad u|^p >= int A(u_star) |grad u_star|^p`` for bounded ``A >= 0``."""
    if p < 1:
        raise ProfileError("exponent out of range", f"p={p}")
    u0 = GridFunction(u.grid.with_split(None), u.values)
    u_star = schwarz_rearrangement(u0).function

    def energy(f: GridFunction) -> float:
        weight = np.asarray(A(f.values), dtype=float)
        return float(np.sum(weight * gradient_fd(f).norm() ** p) * f.grid.cell_measure)

    lhs, rhs = energy(u0), energy(u_star)
    bound = float(np.max(np.abs(A(u.values)), initial=0.0))
    lip = lipschitz_estimate(u)
    tol = tolerances.gradient_pair(u.grid.h, lip ** (p - 1), lip * bound, u.grid.measure)
    return VerificationReport("weighted_ps", lhs, rhs, tol, metadata={"h": u.grid.h, "p": p})
