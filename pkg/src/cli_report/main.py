"""``symcheck`` command line: fixtures, symmetrization, checks, solves and suites."""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from src.cli_report.config import (
    CHECK_KINDS,
    CaseConfig,
    SuiteConfig,
    load_suite,
    parse_checks,
    parse_split,
)
from src.cli_report.emit import FLOAT_FORMAT, emit_report
from src.cli_report.fixtures import gen_fixture
from src.cli_report.suite import CaseContext, exit_status, run_suite
from src.common.errors import SymmetrizationError
from src.common.log import configure_logging, kv
from src.comparison import pointwise_compare
from src.grid_domain import make_masked_grid, parse_shape, write_grid_function
from src.inequality_harness import Tolerances
from src.rearrangement import (
    decreasing_rearrangement,
    schwarz_rearrangement,
    steiner_symmetrization,
)

logger = logging.getLogger(__name__)

DEFAULT_SUITE = Path(__file__).with_name("default_suite.ini")
TALENTI_CHECKS = ("talenti-steiner", "talenti-schwarz", "gradient", "dual")


def _case_from_args(args: argparse.Namespace, checks: Sequence[str]) -> CaseConfig:
    return CaseConfig(
        case_id=args.case,
        shape=args.shape,
        h=args.h,
        split=parse_split(args.split or "none", "--split"),
        function=args.function,
        w=args.w,
        p=args.p,
        seed=args.seed,
        checks=tuple(checks),
    )


def cmd_gen(args: argparse.Namespace) -> int:
    shape, bbox = parse_shape(args.shape)
    grid = make_masked_grid(bbox, args.h, shape, parse_split(args.split or "none", "--split"))
    u = gen_fixture(args.function, grid, args.seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_grid_function(u, args.out)
    logger.info(kv("gen", function=args.function, cells=grid.n_active, out=args.out))
    return 0


def cmd_symmetrize(args: argparse.Namespace) -> int:
    ctx = CaseContext(_case_from_args(args, ()), Tolerances())
    args.out.mkdir(parents=True, exist_ok=True)
    decreasing_rearrangement(ctx.u).to_csv(args.out / "rearrangement.csv")
    result = schwarz_rearrangement(ctx.u)
    result.profile.to_csv(args.out / "schwarz_profile.csv")
    write_grid_function(result.function, args.out / "schwarz.grid")
    if ctx.grid.split is not None:
        write_grid_function(steiner_symmetrization(ctx.u), args.out / "steiner.grid")
    logger.info(kv("symmetrize", cells=ctx.grid.n_active, out=args.out))
    return 0


def _run_and_emit(config: SuiteConfig, jobs: int, timings: bool) -> int:
    results = run_suite(config, jobs)
    status = exit_status(results, config.strict)
    emit_report(results, config.out, status, timings)
    logger.info(kv("suite_done", cases=len(results), exit_status=status, out=config.out))
    return status


def cmd_verify(args: argparse.Namespace) -> int:
    checks = parse_checks(args.checks, "--checks") if args.checks else CHECK_KINDS
    config = SuiteConfig((_case_from_args(args, checks),), out=args.out, strict=args.strict)
    return _run_and_emit(config, args.jobs, args.timings)


def cmd_solve(args: argparse.Namespace) -> int:
    ctx = CaseContext(_case_from_args(args, ()), Tolerances())
    args.out.mkdir(parents=True, exist_ok=True)
    write_grid_function(ctx.solution, args.out / "solution.grid")
    ctx.radial.v.to_csv(args.out / "radial_solution.csv")
    if ctx.grid.split is not None:
        write_grid_function(ctx.steiner_solution, args.out / "steiner_solution.grid")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    case = _case_from_args(args, TALENTI_CHECKS)
    ctx = CaseContext(case, Tolerances())
    args.out.mkdir(parents=True, exist_ok=True)
    ustar = schwarz_rearrangement(ctx.solution).profile
    v = ctx.radial.v
    pd.DataFrame({"r": v.radii, "ustar": ustar(v.radii)}).to_csv(
        args.out / "ustar.csv", index=False, float_format=FLOAT_FORMAT
    )
    v.to_csv(args.out / "v.csv")
    frame = pointwise_compare(ustar, v, case.h, ctx.f.max).to_frame()
    frame.to_csv(args.out / "pointwise_samples.csv", index=False, float_format=FLOAT_FORMAT)
    worst = float(np.min(frame["margin"])) if len(frame) else 0.0
    logger.info(kv("compare", worst_margin=worst))
    config = SuiteConfig((case,), out=args.out, strict=args.strict)
    return _run_and_emit(config, 1, args.timings)


def cmd_suite(args: argparse.Namespace) -> int:
    config = load_suite(args.config or DEFAULT_SUITE)
    config = config.with_overrides(
        out=args.out, strict=True if args.strict else None, seed=args.seed, h=args.h
    )
    return _run_and_emit(config, args.jobs, args.timings)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    parser.add_argument("--jobs", type=int, default=1, help="cases run concurrently")
    parser.add_argument("--strict", action="store_true", help="hypothesis failures fail")
    parser.add_argument("--timings", action="store_true", help="wall-clock in the summary")


def _case_args(parser: argparse.ArgumentParser, out_default: str) -> None:
    parser.add_argument("--shape", default="rectangle 0 1 0 1", help="shape spec")
    parser.add_argument("--h", type=float, default=1.0 / 64, help="grid spacing")
    parser.add_argument("--split", default=None, help="codimension split 'n,m'")
    parser.add_argument("--function", default="cone", help="function spec")
    parser.add_argument("--w", default="u*", help="profile spec for W")
    parser.add_argument("--p", type=float, default=2.0, help="exponent")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--case", default="cli", help="case id in reports")
    parser.add_argument("--out", type=Path, default=Path(out_default))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symcheck", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a fixture grid function")
    _case_args(gen, "fixture.grid")
    gen.set_defaults(handler=cmd_gen)

    sym = sub.add_parser("symmetrize", help="rearrangement and symmetrizations of a fixture")
    _case_args(sym, "symmetrized")
    sym.set_defaults(handler=cmd_symmetrize)

    verify = sub.add_parser("verify", help="inequality checks for one case")
    _case_args(verify, "reports")
    verify.add_argument("--checks", default="", help="comma-separated check kinds")
    verify.set_defaults(handler=cmd_verify)

    solve = sub.add_parser("solve", help="masked and radial Poisson solves")
    _case_args(solve, "solution")
    solve.set_defaults(handler=cmd_solve)

    compare = sub.add_parser("compare", help="Talenti comparisons for one case")
    _case_args(compare, "comparison")
    compare.set_defaults(handler=cmd_compare)

    suite = sub.add_parser("suite", help="run a suite file (bundled default without --config)")
    suite.add_argument("--config", type=Path, default=None)
    suite.add_argument("--out", type=Path, default=None)
    suite.add_argument("--seed", type=int, default=None)
    suite.add_argument("--h", type=float, default=None)
    suite.set_defaults(handler=cmd_suite)

    for command in (gen, sym, verify, solve, compare, suite):
        _common(command)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    configure_logging(level)
    try:
        return int(args.handler(args))
    except (SymmetrizationError, OSError) as exc:
        logger.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
