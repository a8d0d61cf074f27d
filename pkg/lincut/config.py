from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

from lincut.errors import CapExceededError
from lincut.utils.env import parse_int, resolve_env_path
from lincut.utils.logging import get_logger

logger = get_logger("config")

_ENV_PATH = resolve_env_path()

if _ENV_PATH.exists():
    load_dotenv(str(_ENV_PATH), override=False)
    logger.info("Loaded environment variables from file", extra={"path": str(_ENV_PATH)})
else:
    logger.debug(
        ".env file is missing; relying on existing environment variables",
        extra={"path": str(_ENV_PATH)},
    )


CAP_N = parse_int("LINCUT_CAP_N", 20, minimum=1)
CAP_TRAP_N = parse_int("LINCUT_CAP_TRAP_N", 12, minimum=1)
CAP_MV_STATES = parse_int("LINCUT_CAP_MV_STATES", 1 << 20, minimum=1)
MAX_INDEGREE_PRIMES = parse_int("LINCUT_MAX_INDEGREE", 10, minimum=1)
WORKERS = parse_int("LINCUT_WORKERS", 1, minimum=1)
DUMP_DIR = Path(os.getenv("LINCUT_DUMP_DIR") or "lincut-failures")

logger.debug(
    "Configuration loaded",
    extra={
        "CAP_N": CAP_N,
        "CAP_TRAP_N": CAP_TRAP_N,
        "CAP_MV_STATES": CAP_MV_STATES,
        "MAX_INDEGREE_PRIMES": MAX_INDEGREE_PRIMES,
        "WORKERS": WORKERS,
        "DUMP_DIR": str(DUMP_DIR),
    },
)


def state_cap(cap: int | None = None) -> int:
    return CAP_N if cap is None else cap


def trap_cap(cap: int | None = None) -> int:
    return CAP_TRAP_N if cap is None else cap


def mv_cap(cap: int | None = None) -> int:
    return CAP_MV_STATES if cap is None else cap


def ensure_within(what: str, size: int, cap: int) -> None:
    """Raise :class:`CapExceededError` when ``size`` is above ``cap``."""

    if size > cap:
        logger.warning("Refusing enumeration above cap", extra={"what": what, "size": size, "cap": cap})
        raise CapExceededError(what, size, cap)


__all__ = [
    "CAP_MV_STATES",
    "CAP_N",
    "CAP_TRAP_N",
    "DUMP_DIR",
    "MAX_INDEGREE_PRIMES",
    "WORKERS",
    "ensure_within",
    "mv_cap",
    "state_cap",
    "trap_cap",
]
