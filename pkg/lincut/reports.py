"""Schemas of the JSON records produced by the CLI and the verification harness."""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field


class _Record(BaseModel):
    model_config = ConfigDict(frozen=True)


class EdgeEntry(_Record):
    source: str
    target: str
    signs: list[int] = Field(..., description="Subset of {-1, +1}.")


class NetworkInfoReport(_Record):
    kind: Literal["network_info"] = "network_info"
    components: list[str]
    edges: list[EdgeEntry]
    linear_components: list[str]


class FixedPointsReport(_Record):
    kind: Literal["fixed_points"] = "fixed_points"
    states: list[str]


class TrapSpacesReport(_Record):
    kind: Literal["trap_spaces"] = "trap_spaces"
    minimal: bool = False
    trap_spaces: list[str]


class MinTrapSpaceReport(_Record):
    kind: Literal["min_trap_space"] = "min_trap_space"
    state: str
    trap_space: str


class AttractorEntry(_Record):
    states: list[str]
    fixed_point: bool


class AttractorsReport(_Record):
    kind: Literal["attractors"] = "attractors"
    semantics: str
    attractors: list[AttractorEntry]


class LinearCutReport(_Record):
    kind: Literal["linear_cut"] = "linear_cut"
    cuttable: bool
    cut: list[str] = Field(default_factory=list)
    violation: str | None = None
    witness: list[str] = Field(default_factory=list)


class PathReport(_Record):
    kind: Literal["path"] = "path"
    semantics: str
    source: str
    target: str
    reachable: bool
    path: list[str] = Field(default_factory=list)


class GeodesicReport(_Record):
    kind: Literal["geodesic"] = "geodesic"
    semantics: str
    source: str
    flip: list[str]
    exists: bool
    path: list[str] = Field(default_factory=list)
    certificate: dict[str, str] | None = None


class MvPathReport(_Record):
    kind: Literal["mv_path"] = "mv_path"
    source: list[int]
    target: list[int]
    reachable: bool
    path: list[list[int]] = Field(default_factory=list)


class SuiteResult(_Record):
    name: str
    checked: int = 0
    skipped: int = 0
    failures: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @computed_field
    @property
    def skip_ratio(self) -> float:
        total = self.checked + self.skipped
        return self.skipped / total if total else 0.0


class VerificationReport(_Record):
    kind: Literal["verification"] = "verification"
    suite: str
    seed: int
    count: int
    n: int
    max_indegree: int
    passed: bool
    suites: list[SuiteResult]


__all__ = [
    "AttractorEntry",
    "AttractorsReport",
    "EdgeEntry",
    "FixedPointsReport",
    "GeodesicReport",
    "LinearCutReport",
    "MinTrapSpaceReport",
    "MvPathReport",
    "NetworkInfoReport",
    "PathReport",
    "SuiteResult",
    "TrapSpacesReport",
    "VerificationReport",
]
