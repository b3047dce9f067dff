"""Tests for the common module: errors, logging helpers and types."""

import logging

import numpy as np
import pytest

from src.common import (
    ConfigError,
    DomainError,
    Result,
    SolverError,
    SymmetrizationError,
    as_float_array,
    configure_logging,
    ensure_type,
    kv,
)


class TestErrors:
    """Test the exception hierarchy."""

    def test_code_is_message_key(self) -> None:
        """The code leads the message and is kept as an attribute."""
        exc = DomainError("degenerate domain", "no cell center inside the shape")
        assert exc.code == "degenerate domain"
        assert str(exc) == "degenerate domain: no cell center inside the shape"

    def test_builtin_bases(self) -> None:
        """Errors are catchable as the closest builtin."""
        with pytest.raises(ValueError):
            raise DomainError("incompatible grids")
        with pytest.raises(RuntimeError):
            raise SolverError("solver stalled")
        assert issubclass(ConfigError, SymmetrizationError)

    def test_config_error_location(self) -> None:
        """Line and column prefix the detail."""
        exc = ConfigError("bad config", "unknown key", line=4, column=2)
        assert exc.line == 4
        assert str(exc) == "bad config: line 4, column 2: unknown key"


class TestLogging:
    """Test structured log lines and handler set-up."""

    def test_kv_renders_in_call_order(self) -> None:
        """Fields follow the event name; floats use 6 significant digits."""
        assert kv("solve", unknowns=10, residual=1.23456789e-11) == (
            "solve unknowns=10 residual=1.23457e-11"
        )

    def test_kv_quotes_spaces(self) -> None:
        """Values with spaces are quoted."""
        assert kv("case", shape="disk 1") == 'case shape="disk 1"'

    def test_configure_logging_is_idempotent(self) -> None:
        """Repeated calls install a single handler."""
        first = configure_logging(logging.DEBUG)
        count = len(first.handlers)
        second = configure_logging(logging.INFO)
        assert first is second
        assert len(second.handlers) == count
        assert second.level == logging.INFO


class TestTypes:
    """Test shared type helpers."""

    def test_result_ok_and_err(self) -> None:
        """Result carries either a value or an error."""
        ok: Result[int] = Result(value=3)
        err: Result[int] = Result(error="solver stalled")
        assert ok.is_ok and ok.unwrap() == 3
        assert err.is_err
        with pytest.raises(ValueError):
            err.unwrap()

    def test_as_float_array_read_only(self) -> None:
        """Arrays are copied and frozen."""
        array = as_float_array([1, 2, 3])
        assert array.dtype == np.float64
        with pytest.raises(ValueError):
            array[0] = 5.0

    def test_as_float_array_rejects_nan(self) -> None:
        """Non-finite input is refused."""
        with pytest.raises(ValueError, match="finite"):
            as_float_array([1.0, np.nan], "values")

    def test_ensure_type(self) -> None:
        """ensure_type raises TypeError with both type names."""
        with pytest.raises(TypeError, match="must be int, got str"):
            ensure_type("a", int, "count")
