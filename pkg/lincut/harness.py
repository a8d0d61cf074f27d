"""Seeded random networks and the property suites run by ``lincut verify``.

Every suite checks one module's invariants against brute-force oracles on a
stream of random networks. Instance ``k`` of a run with seed ``s`` always
uses the network generated from ``derive_seed(s, k)``, so a report depends
only on the configuration, never on scheduling.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from lincut import config
from lincut.core import (
    BooleanNetwork,
    State,
    Subspace,
    UpdateFunction,
    component_set,
    evaluate,
    fixed_points,
    flip,
    full_mask,
    hull,
    is_trap_space,
    members,
    partition,
    prime_implicants,
)
from lincut.dynamics import (
    Semantics,
    attractors,
    canonical_states,
    distances,
    geodesic,
    geodesic_into,
    maximal_geodesic_endpoints,
    min_trap_space_containing,
    minimal_trap_spaces,
    reachable,
    reachable_set,
    successors,
    trap_spaces,
    trap_spaces_within,
    transition_graph,
)
from lincut.errors import CapExceededError, LincutError, NetworkError
from lincut.extension import (
    Extension,
    cuttable_extension,
    extend,
    full_extension,
    lift_trap_space,
    project_trap_space,
)
from lincut.implicants import (
    Strength,
    erequired,
    find_map,
    geodesic_from_map,
    is_consistent,
    is_strongly_consistent,
    required,
    widen,
)
from lincut.netio import export_dot, parse_bnet, serialize_bnet
from lincut.refinement import (
    RefinedNetwork,
    booltostr,
    make_refinement,
    mv_reachable,
    mv_successors,
    mvtobuf,
    negative_self_loops,
    random_threshold_map,
    refined,
)
from lincut.reports import SuiteResult, VerificationReport
from lincut.structure import find_linear_cut, interaction_graph, linear_components, verify_linear_cut
from lincut.utils.logging import get_logger

logger = get_logger("harness")

ASYNC = Semantics.ASYNCHRONOUS
GENERAL = Semantics.GENERALIZED
PERMISSIVE = Semantics.PERMISSIVE

EXAMPLE_RULES = {
    "swap": "x1, x2\nx2, x1\n",
    "five": "x1, x3\nx2, x4 & x5\nx3, x1\nx4, x1\nx5, x2\n",
    "identity": "x1, x1\n",
    "negation": "x1, !x1\nx2, x1\n",
}


def example_networks() -> dict[str, BooleanNetwork]:
    return {name: parse_bnet(text, strict=True) for name, text in EXAMPLE_RULES.items()}


def random_network(seed: int, n: int, max_indegree: int) -> BooleanNetwork:
    """Random network with regulators sampled without replacement and uniform tables."""

    if n < 1:
        raise NetworkError("random networks need at least one component")
    if not 1 <= max_indegree <= n:
        raise NetworkError(f"max_indegree must lie in [1, {n}], got {max_indegree}")
    rng = random.Random(seed)
    functions = []
    for _ in range(n):
        k = rng.randint(1, max_indegree)
        regulators = tuple(sorted(rng.sample(range(n), k)))
        table = tuple(rng.randint(0, 1) for _ in range(1 << k))
        functions.append(UpdateFunction(regulators, table))
    return BooleanNetwork([f"x{i + 1}" for i in range(n)], functions, warn_pruned=False)


def derive_seed(seed: int, index: int) -> int:
    return seed * 100003 + index


class HarnessConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    suite: str = "all"
    seed: int = 0
    count: int = Field(10, ge=0)
    n: int = Field(4, ge=1)
    max_indegree: int | None = Field(None, ge=1)
    threshold_cap: int = Field(3, ge=1)
    sample: int = Field(6, ge=1, description="States sampled per network where a check is not exhaustive.")
    extension_cap: int = Field(16, ge=1, description="Largest extension (in components) a suite explores.")
    canonical_cap: int = Field(256, ge=1, description="Most canonical states a cut check enumerates.")
    workers: int = Field(default_factory=lambda: config.WORKERS, ge=1)
    dump_dir: Path | None = Field(default_factory=lambda: config.DUMP_DIR)

    @model_validator(mode="after")
    def _check_bounds(self) -> HarnessConfig:
        if self.max_indegree is not None and self.max_indegree > self.n:
            raise ValueError(f"max_indegree {self.max_indegree} exceeds n={self.n}")
        if self.suite not in SUITE_NAMES and self.suite != "all":
            raise ValueError(f"unknown suite {self.suite!r}")
        return self

    @property
    def indegree(self) -> int:
        return self.max_indegree if self.max_indegree is not None else min(2, self.n)


def _sample(rng: random.Random, items: Iterable, k: int) -> list:
    pool = list(items)
    if len(pool) <= k:
        return pool
    picked = sorted(rng.sample(range(len(pool)), k))
    return [pool[i] for i in picked]


def _sample_states(rng: random.Random, n: int, k: int) -> list[State]:
    if 1 << n <= k:
        return [State(n, code) for code in range(1 << n)]
    return [State(n, code) for code in sorted(rng.sample(range(1 << n), k))]


def _random_subspace(rng: random.Random, n: int) -> Subspace:
    fixed = rng.getrandbits(n)
    return Subspace(n, fixed, rng.getrandbits(n) & fixed)


def _minimum_containing(traps: list[Subspace], x: State) -> Subspace:
    result = Subspace.full(x.n)
    for t in traps:
        if t.contains(x):
            result = result.intersect(t)
    return result


def check_core(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    n = net.n
    graph = interaction_graph(net)
    for i, function in enumerate(net.functions):
        if sorted(function.regulators) != graph.regulators(i):
            failures.append(f"{net.names[i]}: non-essential regulator kept")
    images = net.images()
    for x in _sample_states(rng, n, 4 * cfg.sample):
        if evaluate(net, x).bits != images[x.bits]:
            failures.append(f"evaluate({x}) disagrees with the cached image")
        t = _random_subspace(rng, n)
        differ, same, free = partition(x, t)
        if differ | same | free != full_mask(n) or differ & same or differ & free or same & free:
            failures.append(f"partition({x}, {t}) is not a partition")
        if (differ == 0) != t.contains(x):
            failures.append(f"partition({x}, {t}) disagrees with containment")
    group = _sample_states(rng, n, 3)
    h = hull(group)
    if not all(h.contains(x) for x in group):
        failures.append(f"hull {h} misses a member")
    for i in members(h.free):
        if len({x[i] for x in group}) != 2:
            failures.append(f"hull {h} frees a constant coordinate")
    for i, function in enumerate(net.functions):
        for value in (0, 1):
            primes = prime_implicants(net, i, value)
            for p in primes:
                if function.takes_value(p.fixed, p.values, 1 - value):
                    failures.append(f"{p} is not an implicant of {net.names[i]}={value}")
                for j in members(p.fixed):
                    bit = 1 << j
                    if not function.takes_value(p.fixed & ~bit, p.values & ~bit, 1 - value):
                        failures.append(f"{p} is not prime for {net.names[i]}={value}")
            for code in range(1 << n):
                if (images[code] >> i) & 1 == value and not any(p.contains_code(code) for p in primes):
                    failures.append(f"state {State(n, code)} not covered by primes of {net.names[i]}={value}")
                    break
    return failures


def check_netio(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    text = serialize_bnet(net)
    if not parse_bnet(text, strict=True).logically_equal(net):
        failures.append("serialized rules parse to a different network")
    dot = export_dot(interaction_graph(net))
    for name in net.names:
        if name not in dot:
            failures.append(f"DOT output lacks component {name}")
    return failures


def check_structure(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    graph = interaction_graph(net)
    for i in range(net.n):
        for j in range(net.n):
            signs = set()
            for code in range(1 << net.n):
                if (code >> j) & 1:
                    continue
                low, high = net.value(i, code), net.value(i, code | (1 << j))
                if low != high:
                    signs.add(1 if high > low else -1)
            has_edge = graph.graph.has_edge(j, i)
            if bool(signs) != has_edge or (has_edge and set(graph.signs(j, i)) != signs):
                failures.append(f"interaction {net.names[j]} -> {net.names[i]} has wrong signs")
    cut = find_linear_cut(graph)
    if cut is not None and not verify_linear_cut(graph, cut.cut).ok:
        failures.append(f"reported cut {cut.components()} does not verify")
    if cut is not None:
        for i, j in combinations(cut.components(), 2):
            if graph.graph.has_edge(i, j) or graph.graph.has_edge(j, i):
                failures.append(f"minimal cut members {net.names[i]} and {net.names[j]} interact")
    if cut is None and verify_linear_cut(graph, linear_components(graph) & ~graph.isolated_loops()).ok:
        failures.append("a linear cut exists but none was reported")
    return failures


def check_dynamics(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    n = net.n
    for x in _sample_states(rng, n, cfg.sample):
        a = reachable_set(net, x, ASYNC)
        g = reachable_set(net, x, GENERAL)
        p = reachable_set(net, x, PERMISSIVE)
        if not a <= g or not g <= p:
            failures.append(f"reachability from {x} violates async ⊆ general ⊆ permissive")
        longest = max(distances(net, x, PERMISSIVE).values())
        if longest > 2 * n:
            failures.append(f"permissive distance {longest} from {x} exceeds 2n")
        ends = maximal_geodesic_endpoints(net, x, PERMISSIVE)
        if len(ends) != 1 or hull([x, ends[0]]) != min_trap_space_containing(net, x):
            failures.append(f"maximal permissive geodesics from {x} do not delimit its minimal trap space")

    found = {}
    for sem in (ASYNC, GENERAL):
        found[sem] = attractors(net, sem)
        codes = [code for attractor in found[sem] for code in attractor.codes()]
        if len(codes) != len(set(codes)):
            failures.append(f"{sem.value} attractors overlap")
        stg = transition_graph(net, sem)
        reaching = set(codes)
        for code in set(codes):
            reaching |= nx.ancestors(stg, code)
        if len(reaching) != 1 << n:
            failures.append(f"some state reaches no {sem.value} attractor")

    if n <= config.trap_cap():
        traps = trap_spaces(net)
        for s, t in _sample(rng, combinations(traps, 2), 4 * cfg.sample):
            both = s.intersect(t)
            if both is not None and both not in traps:
                failures.append(f"intersection of trap spaces {s} and {t} is not a trap space")
        for t in traps:
            for sem, attractor_list in found.items():
                if not any(all(t.contains(y) for y in a.states) for a in attractor_list):
                    failures.append(f"trap space {t} holds no {sem.value} attractor")
        minimal = [t for t in traps if not any(s != t and t.contains(s) for s in traps)]
        if minimal_trap_spaces(net) != minimal:
            failures.append("minimal trap spaces disagree with brute force")
        for x in _sample_states(rng, n, cfg.sample):
            if min_trap_space_containing(net, x) != _minimum_containing(traps, x):
                failures.append(f"percolation from {x} misses the minimal trap space")
    return failures


def _flip_sets(rng: random.Random, n: int, k: int) -> list[tuple[State, int]]:
    if n <= 6:
        return [(State(n, code), mask) for code in range(1 << n) for mask in range(1 << n)]
    return [(State(n, rng.getrandbits(n)), rng.getrandbits(n)) for _ in range(4 * k)]


def check_implicants(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    graph = interaction_graph(net)
    undirected = graph.graph.to_undirected()
    for x, mask in _flip_sets(rng, net.n, cfg.sample):
        weak = find_map(net, x, mask, Strength.CONSISTENT)
        strong = find_map(net, x, mask, Strength.STRONG)
        if (weak is not None) != (geodesic(net, x, mask, PERMISSIVE) is not None):
            failures.append(f"consistent map vs permissive geodesic disagree at {x}, J={members(mask)}")
        if (strong is not None) != (geodesic(net, x, mask, ASYNC) is not None):
            failures.append(f"strong map vs asynchronous geodesic disagree at {x}, J={members(mask)}")
        for imap, sem, holds in ((weak, PERMISSIVE, is_consistent), (strong, ASYNC, is_strongly_consistent)):
            if imap is None:
                continue
            path = geodesic_from_map(net, imap, sem)
            if path[-1] != flip(x, mask) or len(path) != mask.bit_count() + 1:
                failures.append(f"certificate path from {x} does not end at the flip of J={members(mask)}")
            for i, t in imap.items():
                if t.fixed & ~component_set(graph.regulators(i)):
                    failures.append(f"prime implicant {t} of {net.names[i]} fixes a non-regulator")
                ancestors = component_set(nx.ancestors(graph.graph, i)) | (1 << i)
                if required(imap, i) & ~ancestors:
                    failures.append(f"requirements of {net.names[i]} are not interaction-graph ancestors")
                if erequired(imap, i) & ~component_set(nx.node_connected_component(undirected, i)):
                    failures.append(f"extended requirements of {net.names[i]} leave its connected component")
            i, t = imap.assignment[rng.randrange(len(imap.assignment))] if imap.assignment else (None, None)
            if t is not None and t.fixed:
                wider = widen(net, imap, i, rng.choice(members(t.fixed)))
                if wider is not None and not holds(wider):
                    failures.append(f"generalizing the map at {net.names[i]} broke consistency")
    return failures


def _cut_checks(ext: Extension, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    net = ext.extended
    cut = ext.extender_mask
    if not verify_linear_cut(interaction_graph(net), cut).ok:
        return [f"extender set {ext.extender_names()} is not a linear cut"]

    mins = minimal_trap_spaces(net)
    found = attractors(net, ASYNC)
    if len(found) != len(mins):
        failures.append(f"{len(found)} attractors but {len(mins)} minimal trap spaces")
    for t in mins:
        inside = sum(all(t.contains(y) for y in a.states) for a in found)
        if inside != 1:
            failures.append(f"minimal trap space {t} holds {inside} attractors")
    for attractor in found:
        h = attractor.hull()
        if not is_trap_space(net, h):
            failures.append(f"attractor hull {h} is not a trap space")
            continue
        if len(attractor.states) > 64 or h.size > 256:
            continue
        for x in _sample(rng, h.states(), 3):
            if not any(geodesic(net, x, flip_mask, ASYNC) is not None for flip_mask in (x.bits ^ a.bits for a in attractor.states)):
                failures.append(f"no geodesic from {x} into the attractor with hull {h}")

    canonical = canonical_states(net, cut)
    config.ensure_within("canonical states", len(canonical), cfg.canonical_cap)
    for x in canonical:
        m = min_trap_space_containing(net, x)
        ends = maximal_geodesic_endpoints(net, x, PERMISSIVE)
        if len(ends) != 1:
            failures.append(f"maximal permissive geodesics from {x} end in {len(ends)} states")
        for end in ends:
            if hull([x, end]) != m:
                failures.append(f"maximal permissive geodesic {x} -> {end} does not delimit {m}")
            if geodesic(net, x, x.bits ^ end.bits, ASYNC) is None:
                failures.append(f"maximal permissive geodesic {x} -> {end} has no asynchronous counterpart")
        for y in successors(net, x, GENERAL):
            if reachable(net, x, ASYNC, y) is None:
                failures.append(f"generalized successor {y} of {x} is not asynchronously reachable")
        try:
            inner = trap_spaces_within(net, m)
        except CapExceededError:
            inner = [m]
        for t in inner:
            path = reachable(net, x, ASYNC, t)
            if path is None or len(path) - 1 > 2 * net.n:
                failures.append(f"trap space {t} is not reached from {x} within 2n steps")
        mask = rng.getrandbits(net.n)
        imap = find_map(net, x, mask, Strength.CONSISTENT)
        if imap is not None:
            for i in members(mask & cut):
                if partition(x, imap[i])[1]:
                    failures.append(f"cut component {net.names[i]} has a blocker from {x}")
    return failures


def _sized(ext: Extension, cfg: HarnessConfig) -> Extension:
    config.ensure_within("extension size", ext.n, cfg.extension_cap)
    return ext


def check_cuts(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    return _cut_checks(_sized(cuttable_extension(net), cfg), rng, cfg)


def check_extension(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    n = net.n
    base_minimal = minimal_trap_spaces(net)
    base_traps = trap_spaces(net) if n <= config.trap_cap() else []
    full = _sized(full_extension(net), cfg)
    cuttable = _sized(cuttable_extension(net), cfg)
    for ext in (full, cuttable):
        tag = "full" if ext is full else "cuttable"
        for x in (State(n, code) for code in range(1 << n)):
            y = ext.embed(x)
            if ext.project(y) != x or any(ext.project_i(y, i) != x for i in range(n)):
                failures.append(f"{tag}: projection does not invert the embedding at {x}")
        try:
            ext_minimal = minimal_trap_spaces(ext.extended)
            projected = sorted({project_trap_space(ext, t) for t in ext_minimal}, key=str)
            if projected != base_minimal or len(ext_minimal) != len(base_minimal):
                failures.append(f"{tag}: minimal trap spaces are not in bijection")
            for x in _sample_states(rng, n, cfg.sample):
                lifted = lift_trap_space(ext, min_trap_space_containing(net, x))
                if lifted != min_trap_space_containing(ext.extended, ext.embed(x)):
                    failures.append(f"{tag}: lifting the minimal trap space of {x} is not minimal")
            for t in base_traps:
                lift_trap_space(ext, t)
            for y in _sample_states(rng, ext.n, cfg.sample):
                project_trap_space(ext, min_trap_space_containing(ext.extended, y))
        except LincutError as exc:
            failures.append(f"{tag}: {exc}")

    extended = cuttable.extended
    pairs = []
    for x in _sample_states(rng, n, cfg.sample):
        for y in successors(net, x, GENERAL):
            pairs.append((x, y))
            if reachable(extended, cuttable.embed(x), ASYNC, cuttable.embed(y)) is None:
                failures.append(f"generalized step {x} -> {y} is not L-reachable")
        for t in trap_spaces_within(net, min_trap_space_containing(net, x)) if n <= config.trap_cap() else []:
            lifted = lift_trap_space(cuttable, t)
            hit = reachable(
                extended,
                cuttable.embed(x),
                ASYNC,
                lambda y, lifted=lifted: lifted.contains(y) and cuttable.is_canonical(y),
            )
            if hit is None:
                failures.append(f"trap space {t} inside the minimal trap space of {x} is not L-reachable")
    found = attractors(extended, ASYNC)
    if len(found) != len(base_minimal):
        failures.append(f"cuttable extension has {len(found)} attractors, base has {len(base_minimal)} minimal trap spaces")
    for t in base_minimal:
        lifted = lift_trap_space(cuttable, t)
        if sum(all(lifted.contains(y) for y in a.states) for a in found) != 1:
            failures.append(f"lifted minimal trap space {lifted} does not hold exactly one attractor")
    for x, y in _sample(rng, pairs, 2):
        if reachable(full.extended, full.embed(x), ASYNC, full.embed(y)) is None:
            failures.append(f"{x} -> {y} is L-reachable but not reachable in the full extension")
    return failures


def _simulation_counterexamples(
    ref: RefinedNetwork,
    ext: Extension,
    states: Iterable[tuple[int, ...]],
    *,
    require_full: bool,
) -> list[str]:
    problems = []
    for x in states:
        source = mvtobuf(ref, ext, x, require_full=require_full)
        for y in mv_successors(ref, x):
            target = mvtobuf(ref, ext, y, require_full=require_full)
            for z in source.states():
                if geodesic_into(ext.extended, z, target, ASYNC) is None:
                    problems.append(f"{x} -> {y}: no geodesic from {z} into {target}")
                    break
    return problems


def check_refinement(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    n = net.n
    graph = interaction_graph(net)
    ref = make_refinement(net, random_threshold_map(graph, rng, cfg.threshold_cap))
    config.ensure_within("multi-valued state space", ref.size(), config.mv_cap())

    levels = list(ref.states())
    for x in _sample(rng, levels, 8 * cfg.sample):
        image = refined(ref, x)
        if any(value not in (0, ref.maxima[i]) for i, value in enumerate(image)):
            failures.append(f"refined image of {x} is not extremal")

    reachable_pairs = []
    for x in _sample_states(rng, n, 2 * cfg.sample):
        for i in members(net.unstable(x.bits)):
            y = flip(x, 1 << i)
            if net.value(i, y.bits) != y[i]:
                continue
            path = mv_reachable(ref, booltostr(ref, x), booltostr(ref, y))
            if path is None:
                failures.append(f"irreversible step {x} -> {y} is not simulated by the refinement")
            else:
                reachable_pairs.append((x, y))

    if not negative_self_loops(graph):
        for x in _sample_states(rng, n, cfg.sample // 2 + 1):
            targets = sorted(reachable_set(net, x, ASYNC), key=str)
            for y in _sample(rng, targets, 3):
                if mv_reachable(ref, booltostr(ref, x), booltostr(ref, y)) is None:
                    failures.append(f"{x} -> {y} is not lifted although no self-loop is negative")
                else:
                    reachable_pairs.append((x, y))

    full = _sized(full_extension(net), cfg)
    for x, y in _sample(rng, reachable_pairs, cfg.sample):
        if reachable(full.extended, full.embed(x), ASYNC, full.embed(y)) is None:
            failures.append(f"refined path {x} -> {y} has no counterpart in the full extension")

    for z in _sample_states(rng, n, cfg.sample):
        if mvtobuf(ref, full, booltostr(ref, z)) != full.embed(z).as_subspace():
            failures.append(f"mvtobuf(booltostr({z})) differs from the embedding")

    if n <= 4:
        failures.extend(_simulation_counterexamples(ref, full, levels, require_full=True))
        problems = _simulation_counterexamples(ref, _sized(cuttable_extension(net), cfg), levels, require_full=False)
        if problems:
            logger.info(
                "Full-extension simulation fails on the cuttable extension",
                extra={"count": len(problems), "first": problems[0]},
            )
    return failures


def check_semantics(net: BooleanNetwork, rng: random.Random, cfg: HarnessConfig) -> list[str]:
    failures = []
    ext = _sized(cuttable_extension(net), cfg)
    for x in _sample_states(rng, net.n, cfg.sample):
        a = reachable_set(net, x, ASYNC)
        g = reachable_set(net, x, GENERAL)
        lreach = {ext.project(y) for y in reachable_set(ext.extended, ext.embed(x), ASYNC) if ext.is_canonical(y)}
        p = reachable_set(net, x, PERMISSIVE)
        if not a <= g:
            failures.append(f"async reach of {x} is not inside generalized reach")
        if not g <= lreach:
            failures.append(f"generalized reach of {x} is not inside L-reach")
        if not lreach <= p:
            failures.append(f"L-reach of {x} is not inside permissive reach")
    return failures


def _expect(failures: list[str], condition: bool, message: str) -> None:
    if not condition:
        failures.append(message)


def run_examples() -> SuiteResult:
    """The worked examples on the four small reference networks."""

    nets = example_networks()
    failures: list[str] = []
    swap, five, ident, neg = nets["swap"], nets["five"], nets["identity"], nets["negation"]

    cut = find_linear_cut(interaction_graph(five))
    _expect(failures, cut is not None and cut.components() == [2, 3, 4], "five: linear cut is not {x3, x4, x5}")
    _expect(
        failures,
        [str(x) for x in fixed_points(five)] == ["00000", "10110", "11111"],
        "five: wrong fixed points",
    )
    walk = [State.parse(s) for s in ("11011", "01011", "01001", "00001", "00000")]
    _expect(
        failures,
        all(b in successors(five, a, ASYNC) for a, b in zip(walk, walk[1:])),
        "five: reference path is not asynchronous",
    )
    path = reachable(five, walk[0], ASYNC, walk[-1])
    _expect(failures, path is not None and len(path) == 5, "five: no 4-step path 11011 -> 00000")
    _expect(failures, reachable(five, walk[0], ASYNC, State.parse("10110")) is None, "five: 10110 reachable")
    _expect(
        failures,
        str(min_trap_space_containing(five, walk[0])) == "*****",
        "five: minimal trap space of 11011 is not the full space",
    )

    x = State.parse("01")
    _expect(failures, reachable(swap, x, ASYNC, State.parse("10")) is None, "swap: 01 reaches 10")
    _expect(
        failures,
        sorted(str(y) for y in successors(swap, x, ASYNC)) == ["00", "11"],
        "swap: wrong successors of 01",
    )
    _expect(
        failures,
        [str(t) for t in minimal_trap_spaces(swap)] == ["00", "11"],
        "swap: wrong minimal trap spaces",
    )
    _expect(failures, find_map(swap, x, 0b11, Strength.STRONG) is None, "swap: strong map found for 01")
    _expect(failures, find_map(swap, x, 0b11, Strength.CONSISTENT) is not None, "swap: no consistent map for 01")
    _expect(failures, geodesic(swap, x, 0b11, PERMISSIVE) is not None, "swap: no permissive geodesic")
    ext = cuttable_extension(swap)
    _expect(failures, len(ext.edges) == 1, "swap: cuttable extension should extend one interaction")
    _expect(
        failures,
        reachable(ext.extended, ext.embed(x), ASYNC, ext.embed(State.parse("10"))) is not None,
        "swap: 10 not L-reachable from 01",
    )

    full = full_extension(ident)
    traps = [str(t) for t in trap_spaces(full.extended)]
    _expect(failures, traps == ["**", "00", "11"], "identity: extension trap spaces differ from the swap network")
    _expect(failures, "0*" not in traps, "identity: 0* is a trap space of the extension")
    _expect(
        failures,
        str(project_trap_space(full, Subspace.parse("00"))) == "0",
        "identity: 00 does not project to 0",
    )

    ref = make_refinement(neg, {(0, 0): 1, (0, 1): 2})
    _expect(failures, ref.maxima == (2, 1), "negation: wrong maxima")
    expected = {(0, 0): (2, 0), (0, 1): (2, 0), (1, 0): (0, 0), (1, 1): (0, 0), (2, 0): (0, 1), (2, 1): (0, 1)}
    _expect(
        failures,
        all(refined(ref, x) == image for x, image in expected.items()),
        "negation: refined images differ",
    )
    _expect(failures, mv_reachable(ref, (0, 0), (2, 0)) is None, "negation: (0,0) reaches (2,0)")
    _expect(failures, extend(neg, ()).extended == neg, "negation: empty extension differs from the base")
    return SuiteResult(name="examples", checked=1, failures=failures)


SUITES: dict[str, Callable[[BooleanNetwork, random.Random, HarnessConfig], list[str]]] = {
    "core": check_core,
    "netio": check_netio,
    "structure": check_structure,
    "dynamics": check_dynamics,
    "implicants": check_implicants,
    "cuts": check_cuts,
    "extension": check_extension,
    "refinement": check_refinement,
    "semantics": check_semantics,
}

SUITE_NAMES = ("examples", *SUITES)


def _run_instance(task: tuple[str, int, HarnessConfig]) -> tuple[bool, list[str]]:
    """Run one suite on one network; returns ``(skipped, failures)``."""

    name, index, cfg = task
    seed = derive_seed(cfg.seed, index)
    net = random_network(seed, cfg.n, cfg.indegree)
    rng = random.Random(seed)
    try:
        return False, SUITES[name](net, rng, cfg)
    except CapExceededError as exc:
        logger.info("Skipping instance above cap", extra={"suite": name, "index": index, "reason": str(exc)})
        return True, []
    except LincutError as exc:
        return False, [f"{type(exc).__name__}: {exc}"]


def _dump(cfg: HarnessConfig, name: str, index: int) -> None:
    if cfg.dump_dir is None:
        return
    cfg.dump_dir.mkdir(parents=True, exist_ok=True)
    net = random_network(derive_seed(cfg.seed, index), cfg.n, cfg.indegree)
    path = cfg.dump_dir / f"{name}_{index:04d}.bnet"
    path.write_text(serialize_bnet(net), encoding="utf-8")
    logger.warning("Wrote failing network", extra={"suite": name, "index": index, "path": str(path)})


def run_suite(name: str, cfg: HarnessConfig) -> SuiteResult:
    if name == "examples":
        return run_examples()
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    tasks = [(name, index, cfg) for index in range(cfg.count)]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_run_instance, tasks))
    else:
        outcomes = [_run_instance(task) for task in tasks]

    checked = skipped = 0
    failures: list[str] = []
    for index, (was_skipped, problems) in enumerate(outcomes):
        if was_skipped:
            skipped += 1
            continue
        checked += 1
        if problems:
            failures.extend(f"network {index}: {problem}" for problem in problems)
            _dump(cfg, name, index)
    result = SuiteResult(name=name, checked=checked, skipped=skipped, failures=failures)
    logger.info(
        "Suite finished",
        extra={"suite": name, "checked": checked, "skipped": skipped, "failures": len(failures)},
    )
    if result.skip_ratio > 0.5:
        logger.warning(
            "Most instances were skipped above caps",
            extra={"suite": name, "skip_ratio": round(result.skip_ratio, 3)},
        )
    return result


def verify(cfg: HarnessConfig) -> VerificationReport:
    names = SUITE_NAMES if cfg.suite == "all" else (cfg.suite,)
    results = [run_suite(name, cfg) for name in names]
    return VerificationReport(
        suite=cfg.suite,
        seed=cfg.seed,
        count=cfg.count,
        n=cfg.n,
        max_indegree=cfg.indegree,
        passed=all(result.passed for result in results),
        suites=results,
    )


__all__ = [
    "EXAMPLE_RULES",
    "HarnessConfig",
    "SUITES",
    "SUITE_NAMES",
    "derive_seed",
    "example_networks",
    "random_network",
    "run_examples",
    "run_suite",
    "verify",
]
