"""Boolean networks, states, subspaces and the elementary algebra on them.

Components are indexed from zero. A set of components is an ``int`` bitmask
(bit ``i`` set means component ``i`` is a member); states and subspaces keep
their coordinates in the same bit layout, so containment, ``Δ`` and flips are
plain bit operations.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from lincut import config
from lincut.errors import NetworkError
from lincut.utils.logging import get_logger

logger = get_logger("core")

ComponentSet = int

FREE_SYMBOLS = frozenset("*⋆-")


def full_mask(n: int) -> ComponentSet:
    return (1 << n) - 1


def component_set(indices: Iterable[int]) -> ComponentSet:
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def members(mask: ComponentSet) -> list[int]:
    """Return the components of ``mask`` in ascending order."""

    result: list[int] = []
    index = 0
    while mask:
        if mask & 1:
            result.append(index)
        mask >>= 1
        index += 1
    return result


def submasks(mask: ComponentSet) -> Iterator[int]:
    """Yield every submask of ``mask`` (including 0 and ``mask`` itself)."""

    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class State:
    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"state bits {self.bits} do not fit {self.n} components")

    @classmethod
    def parse(cls, text: str) -> State:
        cleaned = text.strip()
        bits = 0
        for index, char in enumerate(cleaned):
            if char == "1":
                bits |= 1 << index
            elif char != "0":
                raise ValueError(f"invalid state literal {text!r}: only 0 and 1 are allowed")
        return cls(len(cleaned), bits)

    @classmethod
    def from_values(cls, values: Sequence[int]) -> State:
        bits = 0
        for index, value in enumerate(values):
            if value:
                bits |= 1 << index
        return cls(len(values), bits)

    def __getitem__(self, index: int) -> int:
        return (self.bits >> index) & 1

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def values(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def as_subspace(self) -> Subspace:
        return Subspace(self.n, full_mask(self.n), self.bits)


@dataclass(frozen=True)
class Subspace:
    """A vector over ``{0, 1, *}``: ``fixed`` marks the non-free coordinates."""

    n: int
    fixed: int
    values: int

    def __post_init__(self) -> None:
        if self.fixed >> self.n or self.fixed < 0:
            raise ValueError(f"fixed mask {self.fixed} does not fit {self.n} components")
        if self.values & ~self.fixed:
            raise ValueError("subspace values must be zero on free coordinates")

    @classmethod
    def parse(cls, text: str) -> Subspace:
        cleaned = text.strip()
        fixed = values = 0
        for index, char in enumerate(cleaned):
            if char in FREE_SYMBOLS:
                continue
            if char not in "01":
                raise ValueError(f"invalid subspace literal {text!r}: use 0, 1 and *")
            fixed |= 1 << index
            if char == "1":
                values |= 1 << index
        return cls(len(cleaned), fixed, values)

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, 0, 0)

    @classmethod
    def point(cls, x: State) -> Subspace:
        return x.as_subspace()

    @property
    def free(self) -> ComponentSet:
        return full_mask(self.n) & ~self.fixed

    @property
    def is_state(self) -> bool:
        return self.fixed == full_mask(self.n)

    @property
    def size(self) -> int:
        return 1 << self.free.bit_count()

    def __getitem__(self, index: int) -> int | None:
        if not (self.fixed >> index) & 1:
            return None
        return (self.values >> index) & 1

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        chars = []
        for i in range(self.n):
            if not (self.fixed >> i) & 1:
                chars.append("*")
            else:
                chars.append("1" if (self.values >> i) & 1 else "0")
        return "".join(chars)

    def contains(self, other: State | Subspace) -> bool:
        if isinstance(other, State):
            return ((other.bits ^ self.values) & self.fixed) == 0
        if self.fixed & ~other.fixed:
            return False
        return ((other.values ^ self.values) & self.fixed) == 0

    def __contains__(self, other: State | Subspace) -> bool:
        return self.contains(other)

    def contains_code(self, code: int) -> bool:
        return ((code ^ self.values) & self.fixed) == 0

    def intersect(self, other: Subspace) -> Subspace | None:
        common = self.fixed & other.fixed
        if (self.values ^ other.values) & common:
            return None
        return Subspace(self.n, self.fixed | other.fixed, self.values | other.values)

    def codes(self) -> Iterator[int]:
        for sub in submasks(self.free):
            yield self.values | sub

    def states(self) -> Iterator[State]:
        for code in sorted(self.codes(), key=_lex_key(self.n)):
            yield State(self.n, code)

    def as_state(self) -> State:
        if not self.is_state:
            raise ValueError(f"subspace {self} has free coordinates")
        return State(self.n, self.values)


def _lex_key(n: int) -> Callable[[int], tuple[int, ...]]:
    def key(code: int) -> tuple[int, ...]:
        return tuple((code >> i) & 1 for i in range(n))

    return key


def _as_subspace(value: State | Subspace) -> Subspace:
    return value.as_subspace() if isinstance(value, State) else value


@dataclass(frozen=True)
class UpdateFunction:
    """Truth table of ``f_i`` over its regulators.

    Row ``r`` of ``table`` holds the output for the regulator assignment where
    ``regulators[k]`` takes the value of bit ``k`` of ``r``.
    """

    regulators: tuple[int, ...]
    table: tuple[int, ...]
    expression: str | None = None

    def row(self, code: int) -> int:
        row = 0
        for position, regulator in enumerate(self.regulators):
            row |= ((code >> regulator) & 1) << position
        return row

    def __call__(self, code: int) -> int:
        return self.table[self.row(code)]

    def local_restriction(self, fixed: int, values: int) -> tuple[int, int]:
        local_fixed = local_values = 0
        for position, regulator in enumerate(self.regulators):
            if (fixed >> regulator) & 1:
                local_fixed |= 1 << position
                local_values |= ((values >> regulator) & 1) << position
        return local_fixed, local_values

    def takes_value(self, fixed: int, values: int, value: int) -> bool:
        """Return ``True`` if the function equals ``value`` somewhere in the subspace."""

        local_fixed, local_values = self.local_restriction(fixed, values)
        table = self.table
        for row in range(len(table)):
            if (row & local_fixed) == local_values and table[row] == value:
                return True
        return False

    def canonical(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Return ``(sorted regulators, table)`` so equal functions compare equal."""

        order = sorted(range(len(self.regulators)), key=lambda k: self.regulators[k])
        regulators = tuple(self.regulators[k] for k in order)
        table = []
        for row in range(len(self.table)):
            original = 0
            for new_position, old_position in enumerate(order):
                original |= ((row >> new_position) & 1) << old_position
            table.append(self.table[original])
        return regulators, tuple(table)


def _prune(
    regulators: Sequence[int], table: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...], list[int]]:
    regs = list(regulators)
    rows = list(table)
    removed: list[int] = []
    position = 0
    while position < len(regs):
        bit = 1 << position
        essential = any(rows[row] != rows[row | bit] for row in range(len(rows)) if not row & bit)
        if essential:
            position += 1
            continue
        rows = [rows[row] for row in range(len(rows)) if not row & bit]
        removed.append(regs.pop(position))
    return tuple(regs), tuple(rows), removed


class BooleanNetwork:
    """Immutable Boolean network ``(V, f)`` with truth-table update functions.

    Declared regulators that are not essential are pruned at construction and
    reported on the warning channel.
    """

    __slots__ = ("names", "functions", "_index", "_images", "_primes")

    def __init__(
        self,
        names: Sequence[str],
        functions: Sequence[UpdateFunction],
        *,
        warn_pruned: bool = True,
    ) -> None:
        if len(names) != len(functions):
            raise NetworkError("every component needs exactly one update function")
        if len(set(names)) != len(names):
            raise NetworkError("component names must be unique")
        n = len(names)
        pruned_functions: list[UpdateFunction] = []
        for i, function in enumerate(functions):
            regs = tuple(function.regulators)
            if len(set(regs)) != len(regs):
                raise NetworkError(f"component {names[i]} lists a regulator twice")
            if any(r < 0 or r >= n for r in regs):
                raise NetworkError(f"component {names[i]} has a regulator outside the network")
            if len(function.table) != 1 << len(regs):
                raise NetworkError(
                    f"component {names[i]}: table length {len(function.table)} != 2^{len(regs)}"
                )
            if any(value not in (0, 1) for value in function.table):
                raise NetworkError(f"component {names[i]}: table entries must be 0 or 1")
            kept, table, removed = _prune(regs, function.table)
            if removed and warn_pruned:
                logger.warning(
                    "Pruned non-essential regulators",
                    extra={"component": names[i], "removed": [names[r] for r in removed]},
                )
            pruned_functions.append(UpdateFunction(kept, table, function.expression))
        self.names: tuple[str, ...] = tuple(names)
        self.functions: tuple[UpdateFunction, ...] = tuple(pruned_functions)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._images: list[int] | None = None
        self._primes: dict[tuple[int, int], list[Subspace]] = {}

    @classmethod
    def from_tables(
        cls,
        names: Sequence[str],
        specs: Sequence[tuple[Sequence[int], Sequence[int]]],
        expressions: Sequence[str | None] | None = None,
    ) -> BooleanNetwork:
        exprs = list(expressions) if expressions is not None else [None] * len(specs)
        functions = [
            UpdateFunction(tuple(regs), tuple(int(v) for v in table), expr)
            for (regs, table), expr in zip(specs, exprs)
        ]
        return cls(names, functions)

    @classmethod
    def from_function(
        cls, names: Sequence[str], update: Callable[[tuple[int, ...]], Sequence[int]]
    ) -> BooleanNetwork:
        """Tabulate ``update`` over all states; convenient for small fixtures."""

        n = len(names)
        config.ensure_within("tabulated network", n, config.state_cap())
        tables: list[list[int]] = [[] for _ in range(n)]
        for code in range(1 << n):
            image = update(tuple((code >> i) & 1 for i in range(n)))
            for i in range(n):
                tables[i].append(int(bool(image[i])))
        everything = tuple(range(n))
        return cls(names, [UpdateFunction(everything, tuple(table)) for table in tables])

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError as exc:
            raise NetworkError(f"unknown component {name!r}") from exc

    def regulators(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(self.functions[i].regulators))

    def value(self, i: int, code: int) -> int:
        return self.functions[i](code)

    def apply(self, code: int) -> int:
        if self._images is not None:
            return self._images[code]
        image = 0
        for i, function in enumerate(self.functions):
            if function(code):
                image |= 1 << i
        return image

    def images(self, cap: int | None = None) -> list[int]:
        """Return ``f(x)`` for every state code, cached after the first call."""

        if self._images is None:
            config.ensure_within("state space (2^n)", self.n, config.state_cap(cap))
            self._images = [self.apply(code) for code in range(1 << self.n)]
        return self._images

    def unstable(self, code: int) -> ComponentSet:
        """``Δ(x, f(x))`` for the state ``code``."""

        return self.apply(code) ^ code

    def logically_equal(self, other: BooleanNetwork) -> bool:
        if self.names != other.names:
            return False
        return all(a.canonical() == b.canonical() for a, b in zip(self.functions, other.functions))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanNetwork):
            return NotImplemented
        return self.logically_equal(other)

    def __hash__(self) -> int:
        return hash((self.names, tuple(f.canonical() for f in self.functions)))

    def __repr__(self) -> str:
        return f"BooleanNetwork(n={self.n}, names={list(self.names)!r})"


def evaluate(net: BooleanNetwork, x: State) -> State:
    if x.n != net.n:
        raise ValueError(f"state has {x.n} components, network has {net.n}")
    return State(net.n, net.apply(x.bits))


def delta(a: State | Subspace, b: State | Subspace) -> ComponentSet:
    """Components where both entries are fixed and differ."""

    sa, sb = _as_subspace(a), _as_subspace(b)
    if sa.n != sb.n:
        raise ValueError("delta needs vectors of equal length")
    return sa.fixed & sb.fixed & (sa.values ^ sb.values)


def partition(x: State, t: Subspace) -> tuple[ComponentSet, ComponentSet, ComponentSet]:
    """Return ``(Δ(x,t), Same(x,t), Free(t))``."""

    if x.n != t.n:
        raise ValueError("partition needs vectors of equal length")
    differ = t.fixed & (x.bits ^ t.values)
    same = t.fixed & ~(x.bits ^ t.values)
    return differ, same, t.free


def flip(x: State, components: ComponentSet) -> State:
    return State(x.n, x.bits ^ (components & full_mask(x.n)))


def hull(states: Iterable[State]) -> Subspace:
    """Smallest subspace containing every given state."""

    iterator = iter(states)
    try:
        first = next(iterator)
    except StopIteration:
        raise ValueError("hull of an empty set is undefined") from None
    n = first.n
    ones = first.bits
    zeros = full_mask(n) & ~first.bits
    for state in iterator:
        if state.n != n:
            raise ValueError("hull needs states of equal length")
        ones &= state.bits
        zeros &= ~state.bits
    return Subspace(n, ones | zeros, ones)


def hull_of_codes(n: int, codes: Iterable[int]) -> Subspace:
    return hull(State(n, code) for code in codes)


def _local_primes(table: Sequence[int], value: int, width: int) -> set[tuple[int, int]]:
    """Quine–McCluskey merging over a regulator-local table.

    Cubes are ``(care mask, values)`` pairs over ``width`` local bits.
    """

    everything = full_mask(width)
    current = {(everything, row) for row in range(len(table)) if table[row] == value}
    primes: set[tuple[int, int]] = set()
    while current:
        by_mask: dict[int, set[int]] = defaultdict(set)
        for mask, values in current:
            by_mask[mask].add(values)
        merged: set[tuple[int, int]] = set()
        used: set[tuple[int, int]] = set()
        for mask, group in by_mask.items():
            for values in group:
                for position in members(mask):
                    bit = 1 << position
                    if not values & bit and (values | bit) in group:
                        merged.add((mask & ~bit, values))
                        used.add((mask, values))
                        used.add((mask, values | bit))
        primes |= current - used
        current = merged
    return primes


def prime_implicants(net: BooleanNetwork, i: int, value: int) -> list[Subspace]:
    """All maximal subspaces on which ``f_i`` is constantly ``value``.

    Sorted by number of fixed variables, then lexicographically.
    """

    key = (i, value)
    cached = net._primes.get(key)
    if cached is not None:
        return list(cached)
    function = net.functions[i]
    width = len(function.regulators)
    config.ensure_within("prime implicant indegree", width, config.MAX_INDEGREE_PRIMES)
    result: list[Subspace] = []
    for local_mask, local_values in _local_primes(function.table, value, width):
        fixed = values = 0
        for position, regulator in enumerate(function.regulators):
            if (local_mask >> position) & 1:
                fixed |= 1 << regulator
                if (local_values >> position) & 1:
                    values |= 1 << regulator
        result.append(Subspace(net.n, fixed, values))
    result.sort(key=lambda s: (s.fixed.bit_count(), str(s)))
    net._primes[key] = result
    return list(result)


def is_trap_space(net: BooleanNetwork, t: Subspace) -> bool:
    """Every fixed coordinate of ``t`` is constant on ``t`` with the fixed value."""

    for i in members(t.fixed):
        current = (t.values >> i) & 1
        if net.functions[i].takes_value(t.fixed, t.values, 1 - current):
            return False
    return True


def fixed_points(net: BooleanNetwork, cap: int | None = None) -> list[State]:
    images = net.images(cap)
    points = [State(net.n, code) for code, image in enumerate(images) if code == image]
    return sorted(points, key=str)


__all__ = [
    "BooleanNetwork",
    "ComponentSet",
    "State",
    "Subspace",
    "UpdateFunction",
    "component_set",
    "delta",
    "evaluate",
    "fixed_points",
    "flip",
    "full_mask",
    "hull",
    "hull_of_codes",
    "is_trap_space",
    "members",
    "partition",
    "prime_implicants",
    "submasks",
]
