"""Signed interaction graphs and linear cuts."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal

import networkx as nx

from lincut.core import BooleanNetwork, ComponentSet, component_set, full_mask, members
from lincut.errors import LinearCutError
from lincut.utils.logging import get_logger

logger = get_logger("structure")


@dataclass(frozen=True)
class InteractionGraph:
    """Interaction graph on component indices; each edge carries its sign set."""

    names: tuple[str, ...]
    graph: nx.DiGraph = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.names)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.graph.edges())

    def signs(self, source: int, target: int) -> frozenset[int]:
        return self.graph.edges[source, target]["signs"]

    def regulators(self, i: int) -> list[int]:
        return sorted(self.graph.predecessors(i))

    def targets(self, i: int) -> list[int]:
        return sorted(self.graph.successors(i))

    def indegree(self, i: int) -> int:
        return self.graph.in_degree(i)

    def outdegree(self, i: int) -> int:
        return self.graph.out_degree(i)

    def is_isolated_loop(self, i: int) -> bool:
        return self.regulators(i) == [i] and self.targets(i) == [i]

    def isolated_loops(self) -> ComponentSet:
        return component_set(i for i in range(self.n) if self.is_isolated_loop(i))


def interaction_graph(net: BooleanNetwork) -> InteractionGraph:
    """Exhaustive sensitivity scan of every regulator-local table."""

    graph = nx.DiGraph()
    graph.add_nodes_from(range(net.n))
    for i, function in enumerate(net.functions):
        for position, regulator in enumerate(function.regulators):
            bit = 1 << position
            signs: set[int] = set()
            for row in range(len(function.table)):
                if row & bit:
                    continue
                low, high = function.table[row], function.table[row | bit]
                if high > low:
                    signs.add(1)
                elif high < low:
                    signs.add(-1)
            if signs:
                graph.add_edge(regulator, i, signs=frozenset(signs))
    return InteractionGraph(net.names, graph)


def is_linear(g: InteractionGraph, i: int) -> bool:
    return g.indegree(i) == 1 and g.outdegree(i) == 1


def linear_components(g: InteractionGraph) -> ComponentSet:
    return component_set(i for i in range(g.n) if is_linear(g, i))


@dataclass(frozen=True)
class CutCheck:
    kind: Literal["ok", "non_linear", "cycle", "path"]
    witness: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.kind == "ok"

    def witness_edges(self) -> list[tuple[int, int]]:
        if self.kind == "cycle":
            loop = self.witness + self.witness[:1]
            return list(zip(loop, loop[1:]))
        if self.kind == "path":
            return list(zip(self.witness, self.witness[1:]))
        return []


@dataclass(frozen=True)
class LinearCut:
    cut: ComponentSet

    def components(self) -> list[int]:
        return members(self.cut)


def _find_cycle(graph: nx.DiGraph) -> tuple[int, ...] | None:
    try:
        edges = nx.find_cycle(graph, source=sorted(graph.nodes()))
    except nx.NetworkXNoCycle:
        return None
    return tuple(source for source, _ in edges)


def _offending_path(g: InteractionGraph, cut: ComponentSet) -> tuple[int, ...] | None:
    multi_regulator = {i for i in range(g.n) if g.indegree(i) > 1}
    for start in range(g.n):
        if g.outdegree(start) <= 1:
            continue
        parents: dict[int, int] = {}
        queue: deque[int] = deque()
        for nxt in g.targets(start):
            if (cut >> nxt) & 1 or nxt in parents:
                continue
            parents[nxt] = start
            queue.append(nxt)
        while queue:
            node = queue.popleft()
            if node in multi_regulator:
                path = [node]
                current = node
                while True:
                    current = parents[current]
                    path.append(current)
                    if current == start:
                        break
                return tuple(reversed(path))
            for nxt in g.targets(node):
                if (cut >> nxt) & 1 or nxt in parents:
                    continue
                parents[nxt] = node
                queue.append(nxt)
    return None


def verify_linear_cut(g: InteractionGraph, cut: ComponentSet | Iterable[int]) -> CutCheck:
    """Check the linear-cut conditions for ``cut``; isolated loops are accepted as they are."""

    mask = cut if isinstance(cut, int) else component_set(cut)
    if mask & ~full_mask(g.n):
        raise LinearCutError("cut contains components outside the network")
    for i in members(mask):
        if not is_linear(g, i):
            return CutCheck("non_linear", (i,))
    ignored = mask | g.isolated_loops()
    remainder = g.graph.subgraph(i for i in range(g.n) if not (ignored >> i) & 1)
    cycle = _find_cycle(remainder)
    if cycle is not None:
        return CutCheck("cycle", cycle)
    path = _offending_path(g, mask)
    if path is not None:
        return CutCheck("path", path)
    return CutCheck("ok")


def find_linear_cut(g: InteractionGraph, *, minimize: bool = True) -> LinearCut | None:
    """Return a linear cut of ``g`` or ``None`` when the graph is not cuttable.

    All linear components (isolated loops aside) form the largest candidate;
    minimisation greedily drops members in ascending order.
    """

    candidate = linear_components(g) & ~g.isolated_loops()
    if not verify_linear_cut(g, candidate).ok:
        return None
    if minimize:
        for i in members(candidate):
            reduced = candidate & ~(1 << i)
            if verify_linear_cut(g, reduced).ok:
                candidate = reduced
    logger.debug("Linear cut found", extra={"cut": [g.names[i] for i in members(candidate)]})
    return LinearCut(candidate)


__all__ = [
    "CutCheck",
    "InteractionGraph",
    "LinearCut",
    "find_linear_cut",
    "interaction_graph",
    "is_linear",
    "linear_components",
    "verify_linear_cut",
]
