"""Common type definitions and validation helpers."""

from typing import Any, Generic, TypeVar

import numpy as np
import numpy.typing as npt

T = TypeVar("T")

FloatArray = npt.NDArray[np.float64]
BoolArray = npt.NDArray[np.bool_]
IntArray = npt.NDArray[np.int64]


class Result(Generic[T]):
    """Outcome of one unit of work: a value, or the error that stopped it."""

    def __init__(self, value: T | None = None, error: str | None = None) -> None:
        self.value = value
        self.error = error

    @property
    def is_ok(self) -> bool:
        """Check if the work completed."""
        return self.error is None

    @property
    def is_err(self) -> bool:
        """Check if the work raised."""
        return self.error is not None

    def unwrap(self) -> T:
        """Unwrap the value, raising if error."""
        if self.is_err:
            raise ValueError(f"Called unwrap on error: {self.error}")
        return self.value  # type: ignore


def ensure_type(value: Any, expected_type: type, name: str = "value") -> None:
    """Ensure a value is of expected type, raise TypeError otherwise."""
    if not isinstance(value, expected_type):
        raise TypeError(f"{name} must be {expected_type.__name__}, got {type(value).__name__}")


def as_float_array(values: Any, name: str = "values") -> FloatArray:
    """Copy ``values`` into a read-only float64 array, rejecting non-finite entries."""
    array = np.array(values, dtype=np.float64)
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} must be finite")
    array.setflags(write=False)
    return array
