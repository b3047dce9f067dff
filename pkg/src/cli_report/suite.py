"""Run the configured checks of every case, concurrently across cases."""

import logging
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from src.cli_report.config import CaseConfig, SuiteConfig
from src.cli_report.fixtures import gen_fixture, profile_transform
from src.common.errors import HypothesisError, SolverError, SymmetrizationError
from src.common.log import kv
from src.common.types import Result
from src.comparison import (
    ComparisonReport,
    dual_test_function_check,
    gradient_compare,
    pointwise_compare,
    schwarz_concentration_compare,
    steiner_concentration_compare,
)
from src.grid_domain import GridFunction, MaskedGrid, make_masked_grid, parse_shape
from src.inequality_harness import (
    Tolerances,
    VerificationReport,
    hardy_littlewood_check,
    mollified_couple_check,
    nonlinear_ps_check,
    ps_couple_check,
    riesz_check,
    riesz_slice_check,
    schwarz_couple_check,
    weak_form_check,
    weighted_ps_check,
)
from src.pde_solvers import (
    RadialSolution,
    solve_poisson_masked,
    solve_radial_poisson,
    solve_steiner_problem,
)
from src.rearrangement import (
    StepProfile,
    decreasing_rearrangement,
    extremal_for,
    schwarz_rearrangement,
    steiner_symmetrization,
    symmetrize,
)

logger = logging.getLogger(__name__)

Report = VerificationReport | ComparisonReport


@dataclass(frozen=True)
class Skipped:
    """A check that produced no verdict, kept as an explicit row."""

    kind: str
    reason: str
    hypothesis: bool = False


@dataclass
class CaseOutcome:
    case_id: str
    h: float
    seed: int
    reports: list[tuple[str, Report]] = field(default_factory=list)
    skipped: list[Skipped] = field(default_factory=list)
    seconds: float = 0.0


def _nonnegative(u: GridFunction) -> GridFunction:
    # CG rounding next to the boundary; rearrangements need u >= 0
    return u.with_values(np.maximum(u.values, 0.0))


class CaseContext:
    """Fixtures and solves of one case, each built on first use."""

    def __init__(self, case: CaseConfig, tolerances: Tolerances) -> None:
        self.case = case
        self.tolerances = tolerances

    @cached_property
    def grid(self) -> MaskedGrid:
        shape, bbox = parse_shape(self.case.shape)
        return make_masked_grid(bbox, self.case.h, shape, self.case.split)

    @cached_property
    def split_grid(self) -> MaskedGrid:
        return self.grid.with_split(self.grid.effective_split())

    @cached_property
    def u(self) -> GridFunction:
        return gen_fixture(self.case.function, self.grid, self.case.seed)

    @cached_property
    def W(self) -> StepProfile:
        return profile_transform(self.case.w)(decreasing_rearrangement(self.u))

    @cached_property
    def w(self) -> GridFunction:
        return extremal_for(self.u, self.W)

    @cached_property
    def f(self) -> GridFunction:
        return GridFunction(self.split_grid, self.u.values)

    @cached_property
    def solution(self) -> GridFunction:
        return _nonnegative(solve_poisson_masked(self.split_grid, self.f))

    @cached_property
    def steiner_solution(self) -> GridFunction:
        f_sharp = steiner_symmetrization(self.f)
        return _nonnegative(solve_steiner_problem(f_sharp.grid, f_sharp))

    @cached_property
    def radial(self) -> RadialSolution:
        return solve_radial_poisson(decreasing_rearrangement(self.f), self.grid.dim)

    def run(self, kind: str) -> list[Report]:
        return CHECKS[kind](self)


def _riesz(ctx: CaseContext) -> list[Report]:
    return [riesz_check(ctx.u, ctx.w, ctx.u, ctx.tolerances)]


def _weak_form(ctx: CaseContext) -> list[Report]:
    u = GridFunction(ctx.split_grid, ctx.u.values)
    W = symmetrize(GridFunction(ctx.split_grid, ctx.w.values))
    return [weak_form_check(u, W, ctx.tolerances)]


def _talenti_schwarz(ctx: CaseContext) -> list[Report]:
    ustar = schwarz_rearrangement(ctx.solution).profile
    v = ctx.radial.v
    return [
        pointwise_compare(ustar, v, ctx.case.h, ctx.f.max, ctx.tolerances),
        schwarz_concentration_compare(ctx.solution, v, ctx.tolerances),
    ]


def _gradient(ctx: CaseContext) -> list[Report]:
    ustar = decreasing_rearrangement(ctx.solution)
    return [gradient_compare(ustar, ctx.radial, ctx.case.h, ctx.f.max, ctx.tolerances)]


def _dual(ctx: CaseContext) -> list[Report]:
    v = ctx.steiner_solution
    u_sharp = GridFunction(v.grid, steiner_symmetrization(ctx.solution).values)
    return [dual_test_function_check(u_sharp, v, 64, ctx.case.seed, ctx.tolerances)]


def _weight(t: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + t)


CHECKS: dict[str, Callable[[CaseContext], list[Report]]] = {
    "hl": lambda ctx: [hardy_littlewood_check(ctx.u, ctx.w, ctx.tolerances)],
    "riesz": _riesz,
    "ps": lambda ctx: [ps_couple_check(ctx.u, ctx.w, ctx.tolerances)],
    "schwarz-couple": lambda ctx: [schwarz_couple_check(ctx.u, ctx.w, ctx.tolerances)],
    "mollified": lambda ctx: [mollified_couple_check(ctx.u, ctx.w, tolerances=ctx.tolerances)],
    "riesz-slice": lambda ctx: [riesz_slice_check(ctx.u, ctx.w, tolerances=ctx.tolerances)],
    "nonlinear-ps": lambda ctx: [nonlinear_ps_check(ctx.u, ctx.W, ctx.case.p, ctx.tolerances)],
    "weighted-ps": lambda ctx: [weighted_ps_check(ctx.u, _weight, ctx.case.p, ctx.tolerances)],
    "weak-form": _weak_form,
    "talenti-steiner": lambda ctx: [
        steiner_concentration_compare(ctx.solution, ctx.steiner_solution, ctx.tolerances)
    ],
    "talenti-schwarz": _talenti_schwarz,
    "gradient": _gradient,
    "dual": _dual,
}


def run_case(case: CaseConfig, tolerances: Tolerances) -> CaseOutcome:
    """All checks of one case. Errors outside a single check propagate."""
    start = time.perf_counter()
    ctx = CaseContext(case, tolerances)
    outcome = CaseOutcome(case.case_id, case.h, case.seed)
    for kind in case.checks:
        try:
            reports = ctx.run(kind)
        except HypothesisError as exc:
            logger.warning(kv("check_skipped", case=case.case_id, check=kind, reason=exc.code))
            outcome.skipped.append(Skipped(kind, exc.code, hypothesis=True))
            continue
        except SolverError as exc:
            if exc.code != "instance too large for direct Riesz":
                raise
            outcome.skipped.append(Skipped(kind, exc.code))
            continue
        meta = {"case": case.case_id, "h": case.h, "seed": case.seed}
        for report in reports:
            outcome.reports.append((kind, report.with_metadata(**meta)))
            logger.info(kv("check", case=case.case_id, kind=kind, passed=report.passed))
    outcome.seconds = time.perf_counter() - start
    return outcome


def _guarded(case: CaseConfig, tolerances: Tolerances) -> Result[CaseOutcome]:
    try:
        return Result(value=run_case(case, tolerances))
    except SymmetrizationError as exc:
        logger.error(kv("case_failed", case=case.case_id, error=str(exc)))
        return Result(error=str(exc))


def run_suite(config: SuiteConfig, jobs: int = 1) -> dict[str, Result[CaseOutcome]]:
    """Outcomes keyed by case id, in sorted order whatever the schedule."""
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = {
            case.case_id: pool.submit(_guarded, case, config.tolerances) for case in config.cases
        }
        results = {case_id: future.result() for case_id, future in futures.items()}
    return dict(sorted(results.items()))


def exit_status(results: dict[str, Result[CaseOutcome]], strict: bool = False) -> int:
    """0 when every verdict passes, 1 on a failed check, 2 when a case could not run."""
    if any(r.is_err for r in results.values()):
        return 2
    for result in results.values():
        outcome = result.unwrap()
        for _, report in outcome.reports:
            hypothesis_ok = getattr(report, "hypothesis_ok", True)
            if not report.passed and (hypothesis_ok or strict):
                return 1
            if strict and not hypothesis_ok:
                return 1
        if strict and any(s.hypothesis for s in outcome.skipped):
            return 1
    return 0
