"""Single-threshold multi-valued refinements of Boolean networks.

A threshold map assigns an activation level ``T(j, k) ≥ 1`` to each
interaction. Component ``j`` then ranges over ``0..mʲ`` and is read as active
by ``k`` once it reaches ``T(j, k)``; the refined update jumps between the
extreme levels and the dynamics moves one unit at a time.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Iterator, Mapping, Sequence

from lincut import config
from lincut.core import BooleanNetwork, State, Subspace
from lincut.errors import RefinementError
from lincut.extension import Extension
from lincut.structure import InteractionGraph, interaction_graph
from lincut.utils.logging import get_logger

logger = get_logger("refinement")

Levels = tuple[int, ...]
Edge = tuple[int, int]


@dataclass(frozen=True)
class ThresholdMap:
    thresholds: tuple[tuple[Edge, int], ...]

    @classmethod
    def build(cls, graph: InteractionGraph, mapping: Mapping[Edge, int], *, default: int | None = None) -> ThresholdMap:
        """Check that ``mapping`` covers exactly the interactions with values ``≥ 1``.

        With ``default`` set, interactions missing from ``mapping`` get that level.
        """

        edges = set(graph.edges())
        extra = sorted(set(mapping) - edges)
        if extra:
            source, target = extra[0]
            raise RefinementError(f"threshold given for non-interaction {graph.names[source]} -> {graph.names[target]}")
        resolved: dict[Edge, int] = {}
        for edge in sorted(edges):
            value = mapping.get(edge, default)
            if value is None:
                source, target = edge
                raise RefinementError(f"missing threshold for {graph.names[source]} -> {graph.names[target]}")
            if value < 1:
                raise RefinementError(f"threshold {value} on {edge} must be at least 1")
            resolved[edge] = int(value)
        return cls(tuple(sorted(resolved.items())))

    def __getitem__(self, edge: Edge) -> int:
        for key, value in self.thresholds:
            if key == edge:
                return value
        raise RefinementError(f"no threshold for interaction {edge}")

    def as_dict(self) -> dict[Edge, int]:
        return dict(self.thresholds)


@dataclass(frozen=True)
class RefinedNetwork:
    net: BooleanNetwork
    thresholds: ThresholdMap
    maxima: Levels

    @property
    def n(self) -> int:
        return self.net.n

    def size(self) -> int:
        return prod(m + 1 for m in self.maxima)

    def check(self, x: Sequence[int]) -> Levels:
        if len(x) != self.n:
            raise RefinementError(f"level vector has {len(x)} entries, network has {self.n}")
        for i, (level, maximum) in enumerate(zip(x, self.maxima)):
            if not 0 <= level <= maximum:
                raise RefinementError(f"level {level} of {self.net.names[i]} outside [0, {maximum}]")
        return tuple(int(level) for level in x)

    def states(self) -> Iterator[Levels]:
        return itertools.product(*(range(m + 1) for m in self.maxima))


def make_refinement(net: BooleanNetwork, thresholds: ThresholdMap | Mapping[Edge, int]) -> RefinedNetwork:
    graph = interaction_graph(net)
    tmap = thresholds if isinstance(thresholds, ThresholdMap) else ThresholdMap.build(graph, thresholds)
    table = tmap.as_dict()
    if set(table) != set(graph.edges()):
        raise RefinementError("threshold map does not match the interaction graph")
    maxima = tuple(max([1] + [table[(i, j)] for j in graph.targets(i)]) for i in range(net.n))
    for (source, _), value in table.items():
        assert value <= maxima[source]
    return RefinedNetwork(net, tmap, maxima)


def _bool_view(ref: RefinedNetwork, x: Levels, i: int, table: dict[Edge, int]) -> int:
    code = 0
    for j in ref.net.functions[i].regulators:
        if x[j] >= table[(j, i)]:
            code |= 1 << j
    return code


def refined(ref: RefinedNetwork, x: Sequence[int]) -> Levels:
    """Target levels ``mⁱ · f_i(boolview_i(x))``."""

    levels = ref.check(x)
    table = ref.thresholds.as_dict()
    return tuple(
        ref.maxima[i] * ref.net.value(i, _bool_view(ref, levels, i, table)) for i in range(ref.n)
    )


def mv_successors(ref: RefinedNetwork, x: Sequence[int]) -> list[Levels]:
    levels = ref.check(x)
    image = refined(ref, levels)
    result = []
    for i in range(ref.n):
        if image[i] == levels[i]:
            continue
        step = 1 if image[i] > levels[i] else -1
        result.append(levels[:i] + (levels[i] + step,) + levels[i + 1:])
    return result


def booltostr(ref: RefinedNetwork, x: State) -> Levels:
    if x.n != ref.n:
        raise RefinementError(f"state has {x.n} components, network has {ref.n}")
    return tuple(ref.maxima[i] * x[i] for i in range(ref.n))


def mvtobuf(ref: RefinedNetwork, ext: Extension, x: Sequence[int], *, require_full: bool = True) -> Subspace:
    """Boolean subspace of the extension that represents the level vector ``x``.

    Core coordinates at an intermediate level are free; extender ``(j, k)``
    is fixed to ``[x_j ≥ T(j, k)]``.
    """

    levels = ref.check(x)
    if ext.base != ref.net:
        raise RefinementError("extension and refinement are built on different networks")
    if require_full and set(ext.edges) != set(interaction_graph(ref.net).edges()):
        raise RefinementError("mvtobuf needs the full extension")
    table = ref.thresholds.as_dict()
    fixed = values = 0
    for i, level in enumerate(levels):
        if level == 0:
            fixed |= 1 << i
        elif level == ref.maxima[i]:
            fixed |= 1 << i
            values |= 1 << i
    for k, edge in enumerate(ext.edges):
        bit = 1 << (ref.n + k)
        fixed |= bit
        if levels[edge[0]] >= table[edge]:
            values |= bit
    return Subspace(ext.n, fixed, values)


def mv_reachable(
    ref: RefinedNetwork, x: Sequence[int], y: Sequence[int], *, cap: int | None = None
) -> list[Levels] | None:
    """Shortest unit-step path from ``x`` to ``y``, or ``None``."""

    config.ensure_within("multi-valued state space", ref.size(), config.mv_cap(cap))
    start, goal = ref.check(x), ref.check(y)
    parents: dict[Levels, Levels | None] = {start: None}
    queue: deque[Levels] = deque([start])
    while queue:
        current = queue.popleft()
        if current == goal:
            path = [current]
            while parents[path[-1]] is not None:
                path.append(parents[path[-1]])
            path.reverse()
            return path
        for nxt in mv_successors(ref, current):
            if nxt not in parents:
                parents[nxt] = current
                queue.append(nxt)
    return None


def random_threshold_map(graph: InteractionGraph, rng: random.Random, cap: int = 3) -> ThresholdMap:
    """Uniform thresholds in ``[1, cap]`` per interaction, in edge order."""

    if cap < 1:
        raise RefinementError("threshold cap must be at least 1")
    return ThresholdMap.build(graph, {edge: rng.randint(1, cap) for edge in graph.edges()})


def negative_self_loops(graph: InteractionGraph) -> list[int]:
    return [i for i in range(graph.n) if graph.graph.has_edge(i, i) and -1 in graph.signs(i, i)]


__all__ = [
    "Levels",
    "RefinedNetwork",
    "ThresholdMap",
    "booltostr",
    "make_refinement",
    "mv_reachable",
    "mv_successors",
    "mvtobuf",
    "negative_self_loops",
    "random_threshold_map",
    "refined",
]
