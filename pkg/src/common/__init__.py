"""Shared types, errors and logging helpers."""

from src.common.errors import (
    ConfigError,
    DomainError,
    HypothesisError,
    ProfileError,
    SolverError,
    SymmetrizationError,
)
from src.common.log import configure_logging, kv
from src.common.types import BoolArray, FloatArray, IntArray, Result, as_float_array, ensure_type

__all__ = [
    "BoolArray",
    "ConfigError",
    "DomainError",
    "FloatArray",
    "HypothesisError",
    "IntArray",
    "ProfileError",
    "Result",
    "SolverError",
    "SymmetrizationError",
    "as_float_array",
    "configure_logging",
    "ensure_type",
    "kv",
]
