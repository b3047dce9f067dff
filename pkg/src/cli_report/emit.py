"""CSV tables per check kind and a JSON summary of a suite run."""

import json
import logging
import math
from pathlib import Path
from typing import Any

import pandas as pd

from src.cli_report.suite import CaseOutcome
from src.common.types import Result
from src.inequality_harness import VerificationReport

logger = logging.getLogger(__name__)

COLUMNS = ["name", "case", "h", "lhs", "rhs", "margin", "tolerance", "pass"]
FLOAT_FORMAT = "%.17g"
SUMMARY_FILE = "summary.json"


def _verdict(passed: bool) -> str:
    return "true" if passed else "false"


def report_rows(report: Any) -> list[dict[str, Any]]:
    """One row per verification report and sub-report, or one summary row per comparison."""
    reports = report.flatten() if isinstance(report, VerificationReport) else [report]
    rows = []
    for item in reports:
        row = item.as_row()
        row["pass"] = _verdict(row["pass"])
        rows.append({column: row.get(column) for column in COLUMNS})
    return rows


def collect_rows(results: dict[str, Result[CaseOutcome]]) -> dict[str, list[dict[str, Any]]]:
    """Rows grouped by check kind, in case-id then check order."""
    tables: dict[str, list[dict[str, Any]]] = {}
    for result in results.values():
        if result.is_err:
            continue
        outcome = result.unwrap()
        for kind, report in outcome.reports:
            tables.setdefault(kind, []).extend(report_rows(report))
        for skip in outcome.skipped:
            tables.setdefault(skip.kind, []).append(
                {"name": skip.kind, "case": outcome.case_id, "h": outcome.h, "pass": "skipped"}
            )
    return tables


def _worst(rows: list[dict[str, Any]]) -> float | None:
    margins = [r["margin"] for r in rows if isinstance(r.get("margin"), float)]
    margins = [m for m in margins if not math.isnan(m)]
    return min(margins) if margins else None


def summarize(
    results: dict[str, Result[CaseOutcome]],
    tables: dict[str, list[dict[str, Any]]],
    status: int,
    timings: bool = False,
) -> dict[str, Any]:
    kinds = {}
    for kind in sorted(tables):
        rows = tables[kind]
        kinds[kind] = {
            "rows": len(rows),
            "passed": sum(r["pass"] == "true" for r in rows),
            "failed": sum(r["pass"] == "false" for r in rows),
            "skipped": sum(r["pass"] == "skipped" for r in rows),
            "worst_margin": _worst(rows),
        }
    summary: dict[str, Any] = {
        "exit_status": status,
        "cases": len(results),
        "errors": {cid: r.error for cid, r in results.items() if r.is_err},
        "checks": kinds,
    }
    if timings:
        summary["seconds"] = {
            cid: r.unwrap().seconds for cid, r in results.items() if r.is_ok
        }
    return summary


def emit_report(
    results: dict[str, Result[CaseOutcome]],
    out_dir: Path,
    status: int,
    timings: bool = False,
) -> list[Path]:
    """Write ``<kind>.csv`` for every check kind and ``summary.json``; return the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tables = collect_rows(results)
    written = []
    for kind in sorted(tables):
        path = out_dir / f"{kind}.csv"
        frame = pd.DataFrame(tables[kind], columns=COLUMNS)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        written.append(path)
    summary_path = out_dir / SUMMARY_FILE
    summary = summarize(results, tables, status, timings)
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(summary_path)
    logger.info("reports written to %s (%d files)", out_dir, len(written))
    return written
