"""Utilities for reading configuration from environment files."""
from __future__ import annotations

import os
from pathlib import Path

from lincut.errors import ConfigurationError

_PROJECT_ROOT = Path(__file__).resolve().parents[2]


def resolve_env_path() -> Path:
    """Return the location of the project `.env` file."""

    override = os.getenv("LINCUT_ENV_PATH")
    if override:
        return Path(override)
    return _PROJECT_ROOT / ".env"


def strip_inline_comment(raw: str) -> str:
    """Remove inline shell-style comments from a value string."""

    comment_pos = raw.find("#")
    if comment_pos == -1:
        return raw.strip()
    return raw[:comment_pos].strip()


def parse_int(name: str, default: int, *, minimum: int | None = None) -> int:
    """Read an integer environment variable, falling back to ``default``."""

    raw = os.getenv(name)
    if raw is None:
        return default
    cleaned = strip_inline_comment(raw)
    if cleaned == "":
        return default
    try:
        value = int(cleaned.replace("_", ""))
    except ValueError as exc:
        raise ConfigurationError(f"Environment variable {name} must be an integer, got {raw!r}") from exc
    if minimum is not None and value < minimum:
        raise ConfigurationError(f"Environment variable {name} must be >= {minimum}, got {value}")
    return value


__all__ = ["parse_int", "resolve_env_path", "strip_inline_comment"]
