"""Transition semantics, reachability, geodesics, attractors and trap spaces.

All searches are breadth-first with ties broken by ascending component index,
so every returned witness is a deterministic shortest one.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Union

import networkx as nx

from lincut import config
from lincut.core import (
    BooleanNetwork,
    ComponentSet,
    State,
    Subspace,
    full_mask,
    hull_of_codes,
    is_trap_space,
    members,
    submasks,
)
from lincut.utils.logging import get_logger

logger = get_logger("dynamics")


class Semantics(str, Enum):
    SYNCHRONOUS = "sync"
    ASYNCHRONOUS = "async"
    GENERALIZED = "general"
    PERMISSIVE = "permissive"

    @classmethod
    def parse(cls, text: str | Semantics) -> Semantics:
        if isinstance(text, Semantics):
            return text
        aliases = {
            "sync": cls.SYNCHRONOUS,
            "synchronous": cls.SYNCHRONOUS,
            "async": cls.ASYNCHRONOUS,
            "asynchronous": cls.ASYNCHRONOUS,
            "general": cls.GENERALIZED,
            "generalized": cls.GENERALIZED,
            "permissive": cls.PERMISSIVE,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError as exc:
            raise ValueError(f"unknown semantics {text!r}") from exc


Target = Union[State, Subspace, Callable[[State], bool]]


@dataclass(frozen=True)
class PermissiveConfig:
    """Current state plus the components that changed at least once so far."""

    current: State
    varied: ComponentSet

    def prefix_hull(self, start: State) -> Subspace:
        fixed = full_mask(start.n) & ~self.varied
        return Subspace(start.n, fixed, start.bits & fixed)


@dataclass(frozen=True)
class Attractor:
    states: tuple[State, ...]

    @property
    def fixed_point(self) -> bool:
        return len(self.states) == 1

    def codes(self) -> frozenset[int]:
        return frozenset(state.bits for state in self.states)

    def hull(self) -> Subspace:
        return hull_of_codes(self.states[0].n, self.codes())


def _check_cap(net: BooleanNetwork, cap: int | None) -> None:
    config.ensure_within("state space (2^n)", net.n, config.state_cap(cap))


def _flip_order(mask: int) -> list[int]:
    subsets = [sub for sub in submasks(mask) if sub]
    subsets.sort(key=lambda sub: (sub.bit_count(), members(sub)))
    return subsets


def _step_codes(net: BooleanNetwork, code: int, sem: Semantics) -> list[int]:
    unstable = net.unstable(code)
    if not unstable:
        return []
    if sem is Semantics.SYNCHRONOUS:
        return [code ^ unstable]
    if sem is Semantics.ASYNCHRONOUS:
        return [code ^ (1 << i) for i in members(unstable)]
    if sem is Semantics.GENERALIZED:
        return [code ^ sub for sub in _flip_order(unstable)]
    raise ValueError("permissive moves depend on the trajectory; use permissive_successors")


def successors(net: BooleanNetwork, x: State, sem: Semantics | str) -> list[State]:
    """Successors of ``x`` ordered by flipped set (size, then component index)."""

    semantics = Semantics.parse(sem)
    return [State(net.n, code) for code in _step_codes(net, x.bits, semantics)]


def _permissive_moves(net: BooleanNetwork, start: int, current: int, varied: int) -> Iterator[tuple[int, int]]:
    fixed = full_mask(net.n) & ~varied
    values = start & fixed
    for i, function in enumerate(net.functions):
        value = (current >> i) & 1
        if function.takes_value(fixed, values, 1 - value):
            yield current ^ (1 << i), varied | (1 << i)


def permissive_successors(net: BooleanNetwork, start: State, cfg: PermissiveConfig) -> list[PermissiveConfig]:
    if (cfg.current.bits ^ start.bits) & ~cfg.varied:
        raise ValueError("configuration changed components outside its varied set")
    return [
        PermissiveConfig(State(net.n, code), varied)
        for code, varied in _permissive_moves(net, start.bits, cfg.current.bits, cfg.varied)
    ]


def _resolve_target(net: BooleanNetwork, target: Target) -> Callable[[int], bool]:
    if isinstance(target, State):
        return lambda code: code == target.bits
    if isinstance(target, Subspace):
        return target.contains_code
    return lambda code: bool(target(State(net.n, code)))


def _rebuild(parents: dict, node) -> list:
    path = [node]
    while parents[node] is not None:
        node = parents[node]
        path.append(node)
    path.reverse()
    return path


def reachable(
    net: BooleanNetwork,
    x: State,
    sem: Semantics | str,
    target: Target,
    *,
    cap: int | None = None,
) -> list[State] | None:
    """Shortest path from ``x`` to a state satisfying ``target``, or ``None``."""

    _check_cap(net, cap)
    semantics = Semantics.parse(sem)
    hit = _resolve_target(net, target)
    if semantics is Semantics.PERMISSIVE:
        root = (x.bits, 0)
        parents: dict = {root: None}
        queue: deque = deque([root])
        while queue:
            node = queue.popleft()
            if hit(node[0]):
                return [State(net.n, code) for code, _ in _rebuild(parents, node)]
            for nxt in _permissive_moves(net, x.bits, *node):
                if nxt not in parents:
                    parents[nxt] = node
                    queue.append(nxt)
        return None

    parents = {x.bits: None}
    queue = deque([x.bits])
    while queue:
        code = queue.popleft()
        if hit(code):
            return [State(net.n, c) for c in _rebuild(parents, code)]
        for nxt in _step_codes(net, code, semantics):
            if nxt not in parents:
                parents[nxt] = code
                queue.append(nxt)
    return None


def distances(net: BooleanNetwork, x: State, sem: Semantics | str, *, cap: int | None = None) -> dict[int, int]:
    """BFS distance from ``x`` to every reachable state code.

    For permissive semantics the search runs over configurations and each
    state keeps the depth at which it is first visited.
    """

    _check_cap(net, cap)
    semantics = Semantics.parse(sem)
    result: dict[int, int] = {x.bits: 0}
    if semantics is Semantics.PERMISSIVE:
        root = (x.bits, 0)
        depth = {root: 0}
        queue: deque = deque([root])
        while queue:
            node = queue.popleft()
            for nxt in _permissive_moves(net, x.bits, *node):
                if nxt in depth:
                    continue
                depth[nxt] = depth[node] + 1
                result.setdefault(nxt[0], depth[nxt])
                queue.append(nxt)
        return result

    queue = deque([x.bits])
    while queue:
        code = queue.popleft()
        for nxt in _step_codes(net, code, semantics):
            if nxt not in result:
                result[nxt] = result[code] + 1
                queue.append(nxt)
    return result


def reachable_set(net: BooleanNetwork, x: State, sem: Semantics | str, *, cap: int | None = None) -> set[State]:
    return {State(net.n, code) for code in distances(net, x, sem, cap=cap)}


def _geodesic_moves(net: BooleanNetwork, x: int, flipped: int, allowed: int, sem: Semantics) -> Iterator[int]:
    current = x ^ flipped
    if sem is Semantics.PERMISSIVE:
        fixed = full_mask(net.n) & ~flipped
        values = x & fixed
    for i in members(allowed & ~flipped):
        value = (current >> i) & 1
        if sem is Semantics.PERMISSIVE:
            enabled = net.functions[i].takes_value(fixed, values, 1 - value)
        else:
            enabled = net.value(i, current) != value
        if enabled:
            yield flipped | (1 << i)


def _geodesic_semantics(sem: Semantics | str) -> Semantics:
    semantics = Semantics.parse(sem)
    if semantics not in (Semantics.ASYNCHRONOUS, Semantics.PERMISSIVE):
        raise ValueError("geodesics are defined for asynchronous and permissive semantics")
    return semantics


def geodesic_into(
    net: BooleanNetwork,
    x: State,
    target: Subspace,
    sem: Semantics | str,
    *,
    cap: int | None = None,
) -> list[State] | None:
    """Shortest geodesic from ``x`` ending inside ``target``, or ``None``.

    Components that ``target`` pins to their value in ``x`` are never flipped.
    """

    _check_cap(net, cap)
    semantics = _geodesic_semantics(sem)
    allowed = full_mask(net.n) & ~(target.fixed & ~(x.bits ^ target.values))
    parents: dict[int, int | None] = {0: None}
    queue: deque[int] = deque([0])
    while queue:
        flipped = queue.popleft()
        if target.contains_code(x.bits ^ flipped):
            return [State(net.n, x.bits ^ step) for step in _rebuild(parents, flipped)]
        for nxt in _geodesic_moves(net, x.bits, flipped, allowed, semantics):
            if nxt not in parents:
                parents[nxt] = flipped
                queue.append(nxt)
    return None


def geodesic(
    net: BooleanNetwork,
    x: State,
    flip_set: ComponentSet,
    sem: Semantics | str,
    *,
    cap: int | None = None,
) -> list[State] | None:
    """Path from ``x`` to ``x̄^J`` changing every component of ``J`` exactly once."""

    return geodesic_into(net, x, State(net.n, x.bits ^ flip_set).as_subspace(), sem, cap=cap)


def maximal_geodesic_endpoints(
    net: BooleanNetwork, x: State, sem: Semantics | str, *, cap: int | None = None
) -> list[State]:
    """End states of all geodesics from ``x`` that cannot be extended."""

    _check_cap(net, cap)
    semantics = _geodesic_semantics(sem)
    everything = full_mask(net.n)
    seen = {0}
    queue: deque[int] = deque([0])
    endpoints: set[int] = set()
    while queue:
        flipped = queue.popleft()
        extended = False
        for nxt in _geodesic_moves(net, x.bits, flipped, everything, semantics):
            extended = True
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
        if not extended:
            endpoints.add(x.bits ^ flipped)
    return sorted((State(net.n, code) for code in endpoints), key=str)


def transition_graph(net: BooleanNetwork, sem: Semantics | str, *, cap: int | None = None) -> nx.DiGraph:
    """Full state transition graph; nodes are state codes labelled by bit string."""

    _check_cap(net, cap)
    semantics = Semantics.parse(sem)
    if semantics is Semantics.PERMISSIVE:
        raise ValueError("the permissive semantics has no state-level transition graph")
    graph = nx.DiGraph()
    for code in range(1 << net.n):
        graph.add_node(code, label=str(State(net.n, code)))
    for code in range(1 << net.n):
        for nxt in _step_codes(net, code, semantics):
            graph.add_edge(code, nxt)
    return graph


def attractors(net: BooleanNetwork, sem: Semantics | str = Semantics.ASYNCHRONOUS, *, cap: int | None = None) -> list[Attractor]:
    """Terminal strongly connected components of the transition graph."""

    graph = transition_graph(net, sem, cap=cap)
    condensed = nx.condensation(graph)
    found = []
    for component in condensed.nodes():
        if condensed.out_degree(component):
            continue
        codes = condensed.nodes[component]["members"]
        found.append(Attractor(tuple(sorted((State(net.n, c) for c in codes), key=str))))
    found.sort(key=lambda attractor: str(attractor.states[0]))
    logger.debug("Computed attractors", extra={"semantics": Semantics.parse(sem).value, "count": len(found)})
    return found


def trap_spaces_within(net: BooleanNetwork, t: Subspace, *, cap: int | None = None) -> list[Subspace]:
    """Every trap space contained in ``t`` (``3^k`` candidates for ``k`` free coordinates)."""

    config.ensure_within("subspace enumeration (3^k)", t.free.bit_count(), config.trap_cap(cap))
    found = []
    for extra in submasks(t.free):
        for values in submasks(extra):
            candidate = Subspace(net.n, t.fixed | extra, t.values | values)
            if is_trap_space(net, candidate):
                found.append(candidate)
    found.sort(key=str)
    return found


def trap_spaces(net: BooleanNetwork, *, cap: int | None = None) -> list[Subspace]:
    """Every trap space, by brute force over all ``3^n`` subspaces."""

    return trap_spaces_within(net, Subspace.full(net.n), cap=cap)


def min_trap_space_containing(net: BooleanNetwork, x: State | Subspace) -> Subspace:
    """Percolate from ``x``: free every fixed coordinate that can change inside the subspace."""

    t = x.as_subspace() if isinstance(x, State) else x
    fixed, values = t.fixed, t.values
    changed = True
    while changed:
        changed = False
        for i in members(fixed):
            current = (values >> i) & 1
            if net.functions[i].takes_value(fixed, values, 1 - current):
                fixed &= ~(1 << i)
                values &= ~(1 << i)
                changed = True
    return Subspace(net.n, fixed, values)


def _minimal_elements(spaces: set[Subspace]) -> list[Subspace]:
    minimal = [t for t in spaces if not any(s != t and t.contains(s) for s in spaces)]
    minimal.sort(key=str)
    return minimal


def minimal_trap_spaces(net: BooleanNetwork, *, cap: int | None = None) -> list[Subspace]:
    """Minimal trap spaces.

    Each one is the minimal trap space of any state it contains, so the
    candidates come from percolating every state (``2^n`` work, not ``3^n``).
    """

    _check_cap(net, cap)
    candidates = {min_trap_space_containing(net, State(net.n, code)) for code in range(1 << net.n)}
    return _minimal_elements(candidates)


def canonical_states(net: BooleanNetwork, cut: ComponentSet, *, cap: int | None = None) -> list[State]:
    """States in which every component of ``cut`` is stable."""

    _check_cap(net, cap)
    return [State(net.n, code) for code in range(1 << net.n) if not net.unstable(code) & cut]


def is_canonical(net: BooleanNetwork, x: State, cut: ComponentSet) -> bool:
    return not net.unstable(x.bits) & cut


__all__ = [
    "Attractor",
    "PermissiveConfig",
    "Semantics",
    "attractors",
    "canonical_states",
    "distances",
    "geodesic",
    "geodesic_into",
    "is_canonical",
    "maximal_geodesic_endpoints",
    "min_trap_space_containing",
    "minimal_trap_spaces",
    "permissive_successors",
    "reachable",
    "reachable_set",
    "successors",
    "trap_spaces",
    "trap_spaces_within",
    "transition_graph",
]
