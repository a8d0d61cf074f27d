"""Implicant maps, requirement graphs and geodesic certificates.

An implicant map assigns to each component ``i`` of a set ``J`` a subspace on
which ``f_i`` disagrees with ``x_i``. Its requirement graph ``G`` orders the
flips a permissive geodesic needs; the graph ``G⁺`` also records blockers and
orders the flips of an asynchronous geodesic.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

import networkx as nx

from lincut.core import BooleanNetwork, ComponentSet, State, Subspace, component_set, full_mask, members, prime_implicants
from lincut.dynamics import Semantics
from lincut.errors import ImplicantMapError
from lincut.utils.logging import get_logger

logger = get_logger("implicants")


class Strength(str, Enum):
    CONSISTENT = "consistent"
    STRONG = "strong"


@dataclass(frozen=True)
class ImplicantMap:
    x: State
    assignment: tuple[tuple[int, Subspace], ...]

    @classmethod
    def build(cls, net: BooleanNetwork, x: State, mapping: Mapping[int, Subspace]) -> ImplicantMap:
        """Validate that every ``mapping[i]`` is an implicant of ``¬x_i`` for ``f_i``."""

        if x.n != net.n:
            raise ImplicantMapError(f"state has {x.n} components, network has {net.n}")
        for i, t in mapping.items():
            if not 0 <= i < net.n:
                raise ImplicantMapError(f"component {i} is outside the network")
            if t.n != net.n:
                raise ImplicantMapError(f"implicant for {net.names[i]} has the wrong length")
            if net.functions[i].takes_value(t.fixed, t.values, x[i]):
                raise ImplicantMapError(
                    f"{t} is not an implicant of {net.names[i]} = {1 - x[i]}"
                )
        return cls(x, tuple(sorted(mapping.items())))

    @property
    def domain(self) -> ComponentSet:
        return component_set(i for i, _ in self.assignment)

    def __getitem__(self, i: int) -> Subspace:
        for j, t in self.assignment:
            if j == i:
                return t
        raise ImplicantMapError(f"component {i} is not in the domain of the map")

    def items(self) -> Iterator[tuple[int, Subspace]]:
        return iter(self.assignment)

    def certificate(self, names: tuple[str, ...]) -> dict[str, str]:
        """Component name → implicant subspace, for JSON reports."""

        return {names[i]: str(t) for i, t in self.assignment}


def _requirements(x: State, t: Subspace) -> ComponentSet:
    return t.fixed & (x.bits ^ t.values)


def _same(x: State, t: Subspace) -> ComponentSet:
    return t.fixed & ~(x.bits ^ t.values) & full_mask(x.n)


def direct_requirements(imap: ImplicantMap, i: int) -> ComponentSet:
    return _requirements(imap.x, imap[i])


def blockers(imap: ImplicantMap, i: int) -> ComponentSet:
    return _same(imap.x, imap[i]) & ~(1 << i)


def strong_requirements(imap: ImplicantMap, i: int) -> ComponentSet:
    """Direct requirements of ``i`` plus every ``j`` that ``i`` blocks."""

    result = direct_requirements(imap, i)
    for j, t in imap.items():
        if j != i and (_same(imap.x, t) >> i) & 1:
            result |= 1 << j
    return result


@dataclass(frozen=True)
class RequirementGraphs:
    g: nx.DiGraph
    gplus: nx.DiGraph


def requirement_graphs(imap: ImplicantMap) -> RequirementGraphs:
    g = nx.DiGraph()
    gplus = nx.DiGraph()
    domain = imap.domain
    g.add_nodes_from(members(domain))
    gplus.add_nodes_from(members(domain))
    for i, _ in imap.items():
        for j in members(direct_requirements(imap, i)):
            g.add_edge(j, i)
            gplus.add_edge(j, i)
        for b in members(blockers(imap, i) & domain):
            gplus.add_edge(i, b)
    return RequirementGraphs(g, gplus)


def _closure(graph: nx.DiGraph, i: int) -> ComponentSet:
    result = 0
    if i not in graph:
        return result
    for p in graph.predecessors(i):
        result |= 1 << p
        result |= component_set(nx.ancestors(graph, p))
    return result


def required(imap: ImplicantMap, i: int) -> ComponentSet:
    """Components with a non-empty path to ``i`` in ``G``."""

    return _closure(requirement_graphs(imap).g, i)


def erequired(imap: ImplicantMap, i: int) -> ComponentSet:
    return _closure(requirement_graphs(imap).gplus, i)


def _acyclic_within(graph: nx.DiGraph, domain: ComponentSet) -> bool:
    for i in members(domain):
        reach = _closure(graph, i)
        if (reach >> i) & 1 or reach & ~domain:
            return False
    return True


def is_consistent(imap: ImplicantMap) -> bool:
    """No component requires itself and nothing outside ``J`` is required."""

    return _acyclic_within(requirement_graphs(imap).g, imap.domain)


def is_strongly_consistent(imap: ImplicantMap) -> bool:
    return _acyclic_within(requirement_graphs(imap).gplus, imap.domain)


def _edges_for(x: State, i: int, t: Subspace, domain: ComponentSet, strong: bool) -> list[tuple[int, int]]:
    edges = [(j, i) for j in members(_requirements(x, t))]
    if strong:
        edges.extend((i, b) for b in members(_same(x, t) & domain & ~(1 << i)))
    return edges


def find_map(
    net: BooleanNetwork,
    x: State,
    flip_set: ComponentSet,
    strength: Strength | str = Strength.CONSISTENT,
) -> ImplicantMap | None:
    """Depth-first search for a (strongly) consistent prime implicant map of ``J``.

    Components are assigned in ascending order and candidates are tried in
    prime-implicant order; an edge closing a cycle prunes the branch.
    """

    strong = Strength(strength) is Strength.STRONG
    order = members(flip_set)
    candidates = {
        i: [p for p in prime_implicants(net, i, 1 - x[i]) if not _requirements(x, p) & ~flip_set]
        for i in order
    }
    graph = nx.DiGraph()
    graph.add_nodes_from(order)
    chosen: dict[int, Subspace] = {}

    def search(k: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        for prime in candidates[i]:
            added: list[tuple[int, int]] = []
            feasible = True
            for u, v in _edges_for(x, i, prime, flip_set, strong):
                if u == v or nx.has_path(graph, v, u):
                    feasible = False
                    break
                if not graph.has_edge(u, v):
                    graph.add_edge(u, v)
                    added.append((u, v))
            if feasible:
                chosen[i] = prime
                if search(k + 1):
                    return True
                del chosen[i]
            graph.remove_edges_from(added)
        return False

    if not search(0):
        logger.debug(
            "No implicant map found",
            extra={"state": str(x), "flip": members(flip_set), "strength": Strength(strength).value},
        )
        return None
    return ImplicantMap(x, tuple(sorted(chosen.items())))


def widen(net: BooleanNetwork, imap: ImplicantMap, i: int, j: int) -> ImplicantMap | None:
    """Free coordinate ``j`` of ``I(i)`` if the result is still an implicant."""

    t = imap[i]
    if not (t.fixed >> j) & 1:
        return None
    wider = Subspace(t.n, t.fixed & ~(1 << j), t.values & ~(1 << j))
    if net.functions[i].takes_value(wider.fixed, wider.values, imap.x[i]):
        return None
    return ImplicantMap(imap.x, tuple((k, wider if k == i else s) for k, s in imap.items()))


def geodesic_from_map(
    net: BooleanNetwork, imap: ImplicantMap, sem: Semantics | str = Semantics.ASYNCHRONOUS
) -> list[State]:
    """Turn a consistent map into an explicit geodesic from ``x`` to ``x̄^J``.

    Asynchronous semantics orders the flips topologically along ``G⁺`` and
    needs a strongly consistent map; permissive semantics uses ``G``.
    """

    semantics = Semantics.parse(sem)
    graphs = requirement_graphs(imap)
    if semantics is Semantics.ASYNCHRONOUS:
        if not is_strongly_consistent(imap):
            raise ImplicantMapError("asynchronous geodesics need a strongly consistent map")
        graph = graphs.gplus
    elif semantics is Semantics.PERMISSIVE:
        if not is_consistent(imap):
            raise ImplicantMapError("permissive geodesics need a consistent map")
        graph = graphs.g
    else:
        raise ValueError("geodesic certificates exist for asynchronous and permissive semantics")

    x = imap.x
    flipped = 0
    path = [x]
    for i in nx.lexicographical_topological_sort(graph.subgraph(members(imap.domain))):
        current = x.bits ^ flipped
        value = (current >> i) & 1
        if semantics is Semantics.ASYNCHRONOUS:
            enabled = net.value(i, current) != value
        else:
            fixed = full_mask(net.n) & ~flipped
            enabled = net.functions[i].takes_value(fixed, x.bits & fixed, 1 - value)
        if not enabled:
            raise ImplicantMapError(f"flip of {net.names[i]} is not enabled after {members(flipped)}")
        flipped |= 1 << i
        path.append(State(net.n, x.bits ^ flipped))
    return path


__all__ = [
    "ImplicantMap",
    "RequirementGraphs",
    "Strength",
    "blockers",
    "direct_requirements",
    "erequired",
    "find_map",
    "geodesic_from_map",
    "is_consistent",
    "is_strongly_consistent",
    "requirement_graphs",
    "required",
    "strong_requirements",
    "widen",
]
