"""Linear extensions: insert a copying component on selected interactions.

The extended network keeps the base components first (same indices) and
appends one extender per extended interaction ``(j, k)``, ordered by edge.
Extender ``(j, k)`` copies ``y_j`` and core component ``k`` reads it in place
of ``y_j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from lincut.core import BooleanNetwork, ComponentSet, State, Subspace, UpdateFunction, full_mask, is_trap_space
from lincut.dynamics import Semantics, Target, reachable
from lincut.errors import ExtensionError, NotATrapSpaceError
from lincut.structure import interaction_graph, verify_linear_cut
from lincut.utils.logging import get_logger

logger = get_logger("extension")

Edge = tuple[int, int]


@dataclass(frozen=True)
class Extension:
    base: BooleanNetwork
    edges: tuple[Edge, ...]
    extended: BooleanNetwork

    @property
    def n(self) -> int:
        return self.extended.n

    def extender(self, source: int, target: int) -> int:
        try:
            return self.base.n + self.edges.index((source, target))
        except ValueError as exc:
            raise ExtensionError(f"interaction {source}->{target} is not extended") from exc

    @property
    def extender_mask(self) -> ComponentSet:
        return full_mask(self.extended.n) & ~full_mask(self.base.n)

    def label(self, k: int) -> str:
        """Display label of component ``k``: its name, or ``src→dst`` for extenders."""

        if k < self.base.n:
            return self.base.names[k]
        source, target = self.edges[k - self.base.n]
        return f"{self.base.names[source]}→{self.base.names[target]}"

    def extender_names(self) -> list[str]:
        return list(self.extended.names[self.base.n:])

    def embed(self, x: State) -> State:
        """``E(x)``: every extender takes the value of its source."""

        if x.n != self.base.n:
            raise ExtensionError(f"state has {x.n} components, base network has {self.base.n}")
        bits = x.bits
        for k, (source, _) in enumerate(self.edges):
            if (x.bits >> source) & 1:
                bits |= 1 << (self.base.n + k)
        return State(self.extended.n, bits)

    def project(self, y: State) -> State:
        self._check_extended(y)
        return State(self.base.n, y.bits & full_mask(self.base.n))

    def project_i(self, y: State, i: int) -> State:
        """``πⁱ(y)``: the base state that core component ``i`` reads in ``y``."""

        self._check_extended(y)
        bits = y.bits & full_mask(self.base.n)
        for k, (source, target) in enumerate(self.edges):
            if target != i:
                continue
            bits &= ~(1 << source)
            if (y.bits >> (self.base.n + k)) & 1:
                bits |= 1 << source
        return State(self.base.n, bits)

    def is_canonical(self, y: State) -> bool:
        return self.embed(self.project(y)) == y

    def reduce(self) -> BooleanNetwork:
        """Substitute every extender by its source and drop the extenders."""

        functions = []
        for function in self.extended.functions[: self.base.n]:
            regulators = tuple(
                self.edges[r - self.base.n][0] if r >= self.base.n else r for r in function.regulators
            )
            functions.append(UpdateFunction(regulators, function.table))
        return BooleanNetwork(self.base.names, functions)

    def _check_extended(self, y: State) -> None:
        if y.n != self.extended.n:
            raise ExtensionError(f"state has {y.n} components, extension has {self.extended.n}")


def _extender_names(base: BooleanNetwork, edges: Iterable[Edge]) -> list[str]:
    taken = set(base.names)
    names = []
    for source, target in edges:
        stem = f"e_{base.names[source]}_{base.names[target]}"
        name, suffix = stem, 1
        while name in taken:
            suffix += 1
            name = f"{stem}_{suffix}"
        taken.add(name)
        names.append(name)
    return names


def extend(net: BooleanNetwork, edges: Iterable[Edge]) -> Extension:
    """Build the extension of ``net`` over the interactions ``edges``."""

    valid = set(interaction_graph(net).edges())
    chosen = tuple(sorted(set(edges)))
    for source, target in chosen:
        if (source, target) not in valid:
            raise ExtensionError(f"{source}->{target} is not an interaction of the network")
    index = {edge: net.n + k for k, edge in enumerate(chosen)}

    functions = []
    for i, function in enumerate(net.functions):
        rerouted = tuple(index.get((r, i), r) for r in function.regulators)
        expression = function.expression if rerouted == function.regulators else None
        functions.append(UpdateFunction(rerouted, function.table, expression))
    for source, _ in chosen:
        functions.append(UpdateFunction((source,), (0, 1), net.names[source]))

    names = list(net.names) + _extender_names(net, chosen)
    ext = Extension(net, chosen, BooleanNetwork(names, functions))
    if not ext.reduce().logically_equal(net):
        raise ExtensionError("reducing the extension does not recover the base network")
    logger.debug("Built extension", extra={"edges": [ext.label(net.n + k) for k in range(len(chosen))]})
    return ext


def full_extension(net: BooleanNetwork) -> Extension:
    return extend(net, interaction_graph(net).edges())


def cuttable_extension(net: BooleanNetwork) -> Extension:
    """Extend just enough interactions for the extender set to be a linear cut.

    Starts from every interaction out of a multi-target component into a
    multi-regulator component, then repeatedly extends the smallest base
    interaction on the reported cycle or path.
    """

    graph = interaction_graph(net)
    if verify_linear_cut(graph, 0).ok:
        return extend(net, ())
    chosen = {
        (source, target)
        for source, target in graph.edges()
        if graph.outdegree(source) > 1 and graph.indegree(target) > 1
    }
    while True:
        ext = extend(net, chosen)
        check = verify_linear_cut(interaction_graph(ext.extended), ext.extender_mask)
        if check.ok:
            return ext
        open_edges = sorted(
            (s, t) for s, t in check.witness_edges() if s < net.n and t < net.n and (s, t) not in chosen
        )
        if not open_edges:
            raise ExtensionError(f"cannot resolve {check.kind} violation {check.witness}")
        chosen.add(open_edges[0])


def l_reachable(net: BooleanNetwork, edges: Iterable[Edge], x: State, y: State, *, cap: int | None = None) -> list[State] | None:
    """Asynchronous path from ``E(x)`` to ``E(y)`` in the extension over ``edges``."""

    ext = extend(net, edges)
    return reachable(ext.extended, ext.embed(x), Semantics.ASYNCHRONOUS, ext.embed(y), cap=cap)


def extended_reachable(
    ext: Extension,
    start: State,
    target: Target,
    *,
    allow_noncanonical: bool = False,
    cap: int | None = None,
) -> list[State] | None:
    if not ext.is_canonical(start):
        if not allow_noncanonical:
            raise ExtensionError(f"start state {start} is not canonical")
        logger.warning("Searching from a non-canonical extended state", extra={"state": str(start)})
    return reachable(ext.extended, start, Semantics.ASYNCHRONOUS, target, cap=cap)


def lift_trap_space(ext: Extension, t: Subspace) -> Subspace:
    """Image of a base trap space: extender ``(j, k)`` is free exactly when ``j`` is."""

    if t.n != ext.base.n or not is_trap_space(ext.base, t):
        raise NotATrapSpaceError(f"{t} is not a trap space of the base network")
    fixed, values = t.fixed, t.values
    for k, (source, _) in enumerate(ext.edges):
        bit = 1 << (ext.base.n + k)
        if (t.fixed >> source) & 1:
            fixed |= bit
            if (t.values >> source) & 1:
                values |= bit
    lifted = Subspace(ext.n, fixed, values)
    if not is_trap_space(ext.extended, lifted):
        raise ExtensionError(f"lifted subspace {lifted} is not a trap space of the extension")
    return lifted


def project_trap_space(ext: Extension, t: Subspace) -> Subspace:
    if t.n != ext.n or not is_trap_space(ext.extended, t):
        raise NotATrapSpaceError(f"{t} is not a trap space of the extension")
    core = full_mask(ext.base.n)
    projected = Subspace(ext.base.n, t.fixed & core, t.values & core)
    if not is_trap_space(ext.base, projected):
        raise ExtensionError(f"projected subspace {projected} is not a trap space of the base")
    return projected


__all__ = [
    "Extension",
    "cuttable_extension",
    "extend",
    "extended_reachable",
    "full_extension",
    "l_reachable",
    "lift_trap_space",
    "project_trap_space",
]
