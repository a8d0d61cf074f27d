"""Exception hierarchy shared by all lincut modules."""
from __future__ import annotations


class LincutError(RuntimeError):
    """Base exception for lincut related errors."""


class ConfigurationError(LincutError):
    """Raised when an environment setting cannot be parsed."""


class CapExceededError(LincutError):
    """Raised when an explicit enumeration would exceed its configured cap."""

    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class NetworkError(LincutError):
    """Raised when a Boolean network cannot be constructed."""


class NetworkParseError(NetworkError):
    """Raised for malformed rule files; carries the 1-based source position."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UndeclaredVariableError(NetworkParseError):
    """A variable is referenced but never declared as a target."""


class DuplicateTargetError(NetworkParseError):
    """The same target appears on two rule lines."""


class ThresholdParseError(NetworkParseError):
    """Malformed threshold sidecar file."""


class LinearCutError(LincutError):
    """Raised when a candidate cut is not a subset of the vertices."""


class ImplicantMapError(LincutError):
    """Raised for invalid or inconsistent implicant maps."""


class ExtensionError(LincutError):
    """Raised for invalid interaction sets or misuse of extended states."""


class NotATrapSpaceError(LincutError):
    """Raised when a subspace handed to a trap-space operation is not closed."""


class RefinementError(LincutError):
    """Raised for invalid threshold maps or refined states."""


__all__ = [
    "CapExceededError",
    "ConfigurationError",
    "DuplicateTargetError",
    "ExtensionError",
    "ImplicantMapError",
    "LincutError",
    "LinearCutError",
    "NetworkError",
    "NetworkParseError",
    "NotATrapSpaceError",
    "RefinementError",
    "ThresholdParseError",
    "UndeclaredVariableError",
]
