"""Command-line front end: suites of checks, solves and CSV/JSON reports."""

from src.cli_report.config import (
    CHECK_KINDS,
    CaseConfig,
    SuiteConfig,
    load_suite,
    parse_checks,
    parse_split,
    parse_suite,
)
from src.cli_report.emit import COLUMNS, collect_rows, emit_report, summarize
from src.cli_report.fixtures import gen_fixture, profile_transform
from src.cli_report.suite import CaseContext, CaseOutcome, Skipped, exit_status, run_case, run_suite

__all__ = [
    "CHECK_KINDS",
    "COLUMNS",
    "CaseConfig",
    "CaseContext",
    "CaseOutcome",
    "Skipped",
    "SuiteConfig",
    "collect_rows",
    "emit_report",
    "exit_status",
    "gen_fixture",
    "load_suite",
    "parse_checks",
    "parse_split",
    "parse_suite",
    "profile_transform",
    "run_case",
    "run_suite",
    "summarize",
]
