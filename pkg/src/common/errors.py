"""Exception hierarchy shared by every symmetrization module.

Each error carries a short ``code`` string (the message key reported by the
CLI) and subclasses the closest builtin so generic ``except ValueError``
callers keep working.
"""


class SymmetrizationError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, code: str, detail: str | None = None) -> None:
        self.code = code
        self.detail = detail
        message = code if detail is None else f"{code}: {detail}"
        super().__init__(message)


class DomainError(SymmetrizationError, ValueError):
    """Invalid domain, grid or split."""


class ProfileError(SymmetrizationError, ValueError):
    """Invalid rearrangement profile or threshold."""


class HypothesisError(SymmetrizationError, ValueError):
    """An inequality was requested for inputs outside its hypotheses."""


class SolverError(SymmetrizationError, RuntimeError):
    """A numerical solve or direct sum could not be completed."""


class ConfigError(SymmetrizationError, ValueError):
    """Unreadable suite configuration or fixture spec."""

    def __init__(
        self,
        code: str,
        detail: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            detail = where if detail is None else f"{where}: {detail}"
        super().__init__(code, detail)
