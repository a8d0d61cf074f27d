"""Central logging configuration for the lincut toolkit."""
from __future__ import annotations

import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

_DEFAULT_LOG_LEVEL = os.getenv("LINCUT_LOG_LEVEL", "WARNING").upper()

_DEFAULT_FORMAT = (
    "%(asctime)s | %(levelname)s | %(name)s:%(lineno)d | %(message)s"
)


def _build_file_handler(log_file: str) -> RotatingFileHandler:
    log_dir = Path(os.getenv("LINCUT_LOG_DIR", Path.cwd() / "logs"))
    log_dir.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(
        log_dir / log_file,
        maxBytes=int(os.getenv("LINCUT_LOG_MAX_BYTES", 5 * 1024 * 1024)),
        backupCount=int(os.getenv("LINCUT_LOG_BACKUP_COUNT", 5)),
        encoding="utf-8",
    )
    handler.setFormatter(logging.Formatter(_DEFAULT_FORMAT))
    return handler


def _build_stream_handler() -> logging.StreamHandler:
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(_DEFAULT_FORMAT))
    return handler


def configure_logging(level: Optional[str] = None) -> None:
    """Initialise logging handlers once for the whole toolkit.

    A later call with an explicit ``level`` only adjusts the level, so the CLI
    can honour ``--log-level`` after library modules already grabbed loggers.
    """

    root = logging.getLogger("lincut")
    if root.handlers:
        if level:
            root.setLevel(level.upper())
        return

    root.setLevel((level or _DEFAULT_LOG_LEVEL).upper())
    root.addHandler(_build_stream_handler())
    log_file = os.getenv("LINCUT_LOG_FILE")
    if log_file:
        root.addHandler(_build_file_handler(log_file))
    root.propagate = False


def get_logger(name: str) -> logging.Logger:
    """Return a module-level logger attached to the project root."""

    configure_logging()
    return logging.getLogger("lincut").getChild(name)


__all__ = ["configure_logging", "get_logger"]
