"""Talenti-type comparison verdicts for solutions and their symmetrized problems."""

from src.comparison.dual import dual_test_function_check, symmetric_test_functions
from src.comparison.report import KINDS, ComparisonReport, Sample
from src.comparison.talenti import (
    gradient_compare,
    plaplacian_test_function_check,
    pointwise_compare,
    row_concentration_samples,
    row_radii,
    schwarz_concentration_compare,
    steiner_concentration_compare,
)

__all__ = [
    "KINDS",
    "ComparisonReport",
    "Sample",
    "dual_test_function_check",
    "gradient_compare",
    "plaplacian_test_function_check",
    "pointwise_compare",
    "row_concentration_samples",
    "row_radii",
    "schwarz_concentration_compare",
    "steiner_concentration_compare",
    "symmetric_test_functions",
]
