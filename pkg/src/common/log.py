"""Logging set-up and structured ``key=value`` log lines."""

import logging
import sys
from typing import Any

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_ROOT = "src"


def configure_logging(level: int = logging.INFO) -> logging.Logger:
    """Attach one stderr handler to the package logger.

    Safe to call repeatedly; the handler is installed only once.
    """
    logger = logging.getLogger(_ROOT)
    logger.setLevel(level)
    if not any(getattr(h, "_symcheck", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._symcheck = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
    return logger


def _render(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    text = str(value)
    return f'"{text}"' if " " in text else text


def kv(event: str, **fields: Any) -> str:
    """Render ``event key=value ...`` with keys in call order."""
    parts = [event] + [f"{key}={_render(value)}" for key, value in fields.items()]
    return " ".join(parts)
