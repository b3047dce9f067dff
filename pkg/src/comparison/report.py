"""Verdict record for a family of comparisons sampled over a parameter."""

from dataclasses import dataclass, field
from typing import Any, NamedTuple

import pandas as pd

KINDS = (
    "steiner-concentration",
    "schwarz-concentration",
    "pointwise",
    "gradient",
    "dual",
    "plaplacian-test",
)


class Sample(NamedTuple):
    param: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        # every comparison claims lhs <= rhs
        return self.rhs - self.lhs


@dataclass(frozen=True)
class ComparisonReport:
    """``lhs <= rhs`` at every sample; passes when the worst margin is at least ``-tolerance``."""

    kind: str
    samples: tuple[Sample, ...]
    tolerance: float
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown comparison kind {self.kind!r}")
        if not self.tolerance >= 0:
            raise ValueError("tolerance must be nonnegative")

    @property
    def worst(self) -> Sample | None:
        return min(self.samples, key=lambda s: s.margin, default=None)

    @property
    def worst_margin(self) -> float:
        worst = self.worst
        return 0.0 if worst is None else worst.margin

    @property
    def passed(self) -> bool:
        return self.worst_margin >= -self.tolerance

    def to_frame(self) -> pd.DataFrame:
        """One row per sample: ``kind,param,lhs,rhs,margin,pass``."""
        rows = [
            {
                "kind": self.kind,
                "param": s.param,
                "lhs": s.lhs,
                "rhs": s.rhs,
                "margin": s.margin,
                "pass": s.margin >= -self.tolerance,
            }
            for s in self.samples
        ]
        return pd.DataFrame(rows, columns=["kind", "param", "lhs", "rhs", "margin", "pass"])

    def as_row(self) -> dict[str, Any]:
        """Summary row in the shape of a verification report row."""
        worst = self.worst
        return {
            "name": self.kind,
            "lhs": None if worst is None else worst.lhs,
            "rhs": None if worst is None else worst.rhs,
            "margin": self.worst_margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "h": self.metadata.get("h"),
            "seed": self.metadata.get("seed"),
            "case": self.metadata.get("case"),
        }

    def with_metadata(self, **fields: Any) -> "ComparisonReport":
        merged = {**self.metadata, **fields}
        return ComparisonReport(self.kind, self.samples, self.tolerance, merged)
