"""Verdict record for one inequality check."""

import math
from dataclasses import dataclass, field
from typing import Any

LESS_EQUAL = "<="
GREATER_EQUAL = ">="


@dataclass(frozen=True)
class VerificationReport:
    """Both sides of one inequality, its signed margin and the verdict.

    ``margin`` is always ``lhs - rhs``. For a ``lhs >= rhs`` claim the check
    passes when ``margin >= -tolerance``; for ``lhs <= rhs`` when
    ``margin <= tolerance``.
    """

    name: str
    lhs: float
    rhs: float
    tolerance: float
    relation: str = GREATER_EQUAL
    metadata: dict[str, Any] = field(default_factory=dict)
    hypothesis_ok: bool = True
    sub_reports: tuple["VerificationReport", ...] = ()

    def __post_init__(self) -> None:
        if self.relation not in (LESS_EQUAL, GREATER_EQUAL):
            raise ValueError(f"unknown relation {self.relation!r}")
        if not self.tolerance >= 0:
            raise ValueError("tolerance must be nonnegative")

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    @property
    def slack(self) -> float:
        """Signed distance to failure; nonnegative iff the claim holds within tolerance."""
        oriented = self.margin if self.relation == GREATER_EQUAL else -self.margin
        return oriented + self.tolerance

    @property
    def passed(self) -> bool:
        own = math.isfinite(self.slack) and self.slack >= 0
        return own and all(sub.passed for sub in self.sub_reports)

    def with_metadata(self, **fields: Any) -> "VerificationReport":
        merged = {**self.metadata, **fields}
        subs = tuple(sub.with_metadata(**fields) for sub in self.sub_reports)
        return VerificationReport(
            self.name,
            self.lhs,
            self.rhs,
            self.tolerance,
            self.relation,
            merged,
            self.hypothesis_ok,
            subs,
        )

    def flatten(self) -> list["VerificationReport"]:
        """This report followed by every sub-report, depth first."""
        rows = [self]
        for sub in self.sub_reports:
            rows.extend(sub.flatten())
        return rows

    def as_row(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "h": self.metadata.get("h"),
            "seed": self.metadata.get("seed"),
            "case": self.metadata.get("case"),
        }
