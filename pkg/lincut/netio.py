"""Reading and writing networks, threshold maps, reports and DOT graphs.

Rule files use the common ``target, expression`` format: one rule per line,
operators ``!`` > ``&`` > ``|``, parentheses, literals ``0``/``1`` and ``#``
comments.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Union

import networkx as nx
from pydantic import BaseModel

from lincut import config
from lincut.core import BooleanNetwork, UpdateFunction, members, prime_implicants
from lincut.errors import (
    DuplicateTargetError,
    NetworkParseError,
    ThresholdParseError,
    UndeclaredVariableError,
)
from lincut.structure import InteractionGraph
from lincut.utils.logging import get_logger

logger = get_logger("netio")

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_HEADER = ("targets", "factors")
EXTENDER_PREFIX = "# extender:"


@dataclass(frozen=True)
class Var:
    name: str
    column: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class And:
    operands: tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    operands: tuple["Expr", ...]


Expr = Union[Var, Const, Not, And, Or]


def evaluate_expr(expr: Expr, env: dict[str, int]) -> int:
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return 1 - evaluate_expr(expr.operand, env)
    if isinstance(expr, And):
        return int(all(evaluate_expr(op, env) for op in expr.operands))
    return int(any(evaluate_expr(op, env) for op in expr.operands))


def expr_variables(expr: Expr) -> list[Var]:
    if isinstance(expr, Var):
        return [expr]
    if isinstance(expr, Const):
        return []
    if isinstance(expr, Not):
        return expr_variables(expr.operand)
    found: list[Var] = []
    for op in expr.operands:
        found.extend(expr_variables(op))
    return found


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, Not):
        inner = format_expr(expr.operand)
        if isinstance(expr.operand, (And, Or)):
            inner = f"({inner})"
        return f"!{inner}"
    if isinstance(expr, And):
        parts = [f"({format_expr(op)})" if isinstance(op, Or) else format_expr(op) for op in expr.operands]
        return " & ".join(parts)
    return " | ".join(format_expr(op) for op in expr.operands)


class _Parser:
    """Recursive-descent parser for a single rule expression."""

    def __init__(self, text: str, line: int, offset: int) -> None:
        self.text = text
        self.line = line
        self.offset = offset
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> NetworkParseError:
        at = self.pos if pos is None else pos
        return NetworkParseError(message, self.line, self.offset + at + 1)

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Expr:
        expr = self._or()
        if self._peek():
            raise self.error(f"unexpected character {self.text[self.pos]!r}")
        return expr

    def _or(self) -> Expr:
        operands = [self._and()]
        while self._peek() == "|":
            self.pos += 1
            operands.append(self._and())
        return operands[0] if len(operands) == 1 else Or(tuple(operands))

    def _and(self) -> Expr:
        operands = [self._not()]
        while self._peek() == "&":
            self.pos += 1
            operands.append(self._not())
        return operands[0] if len(operands) == 1 else And(tuple(operands))

    def _not(self) -> Expr:
        if self._peek() == "!":
            self.pos += 1
            return Not(self._not())
        return self._atom()

    def _atom(self) -> Expr:
        char = self._peek()
        if not char:
            raise self.error("unexpected end of expression")
        if char == "(":
            self.pos += 1
            expr = self._or()
            if self._peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return expr
        if char in "01":
            end = self.pos + 1
            if end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
                raise self.error("invalid literal")
            self.pos = end
            return Const(int(char))
        match = _NAME_RE.match(self.text, self.pos)
        if not match:
            raise self.error(f"unexpected character {char!r}")
        start = self.pos
        self.pos = match.end()
        return Var(match.group(0), self.offset + start + 1)


@dataclass(frozen=True)
class Rule:
    target: str
    expression: str
    ast: Expr
    line: int
    column: int


@dataclass(frozen=True)
class NetworkDocument:
    rules: tuple[Rule, ...]
    inputs: tuple[str, ...]
    extenders: tuple[str, ...] = ()

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(rule.target for rule in self.rules) + self.inputs


def _strip_comment(raw: str) -> str:
    pos = raw.find("#")
    return raw if pos == -1 else raw[:pos]


def parse_document(text: str, *, strict: bool = False) -> NetworkDocument:
    """Parse rule text into an ordered document with source positions."""

    rules: list[Rule] = []
    seen: dict[str, int] = {}
    extenders: list[str] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped_raw = raw.strip()
        if stripped_raw.startswith(EXTENDER_PREFIX):
            extenders.append(stripped_raw[len(EXTENDER_PREFIX):].strip())
            continue
        content = _strip_comment(raw)
        if not content.strip():
            continue
        comma = content.find(",")
        if comma == -1:
            column = len(content) - len(content.lstrip()) + 1
            raise NetworkParseError("expected 'target, expression'", line_no, column)
        target_raw = content[:comma]
        target = target_raw.strip()
        target_column = len(target_raw) - len(target_raw.lstrip()) + 1
        expression_text = content[comma + 1:]
        if (target.lower(), expression_text.strip().lower()) == _HEADER:
            continue
        if not _NAME_RE.fullmatch(target):
            raise NetworkParseError(f"invalid target name {target!r}", line_no, target_column)
        if target in seen:
            raise DuplicateTargetError(
                f"duplicate target {target!r} (first declared on line {seen[target]})",
                line_no,
                target_column,
            )
        seen[target] = line_no
        ast = _Parser(expression_text, line_no, comma + 1).parse()
        rules.append(Rule(target, expression_text.strip(), ast, line_no, target_column))

    inputs: list[str] = []
    for rule in rules:
        for var in expr_variables(rule.ast):
            if var.name in seen or var.name in inputs:
                continue
            if strict:
                raise UndeclaredVariableError(f"variable {var.name!r} is not declared", rule.line, var.column)
            logger.warning(
                "Variable only appears on right-hand sides; adding identity rule",
                extra={"variable": var.name, "line": rule.line},
            )
            inputs.append(var.name)
    return NetworkDocument(tuple(rules), tuple(inputs), tuple(extenders))


def build_network(document: NetworkDocument) -> BooleanNetwork:
    names = document.names
    index = {name: i for i, name in enumerate(names)}
    functions: list[UpdateFunction] = []
    for rule in document.rules:
        variables = sorted({var.name for var in expr_variables(rule.ast)}, key=index.__getitem__)
        config.ensure_within(f"indegree of {rule.target}", len(variables), config.state_cap())
        table = []
        for row in range(1 << len(variables)):
            env = {name: (row >> k) & 1 for k, name in enumerate(variables)}
            table.append(evaluate_expr(rule.ast, env))
        functions.append(
            UpdateFunction(tuple(index[name] for name in variables), tuple(table), format_expr(rule.ast))
        )
    for name in document.inputs:
        functions.append(UpdateFunction((index[name],), (0, 1), name))
    return BooleanNetwork(names, functions)


def parse_bnet(text: str, *, strict: bool = False) -> BooleanNetwork:
    return build_network(parse_document(text, strict=strict))


def parse_extended_bnet(text: str, *, strict: bool = False) -> tuple[BooleanNetwork, list[int]]:
    """Parse rules written by ``extend`` together with the indices its header marks as extenders."""

    document = parse_document(text, strict=strict)
    net = build_network(document)
    return net, [net.index(name) for name in document.extenders]


def _dnf(net: BooleanNetwork, i: int) -> str:
    primes = prime_implicants(net, i, 1)
    if not primes:
        return "0"
    terms = []
    for prime in primes:
        if prime.fixed == 0:
            return "1"
        literals = [
            net.names[j] if (prime.values >> j) & 1 else f"!{net.names[j]}" for j in members(prime.fixed)
        ]
        terms.append(" & ".join(literals))
    return " | ".join(terms)


def serialize_bnet(net: BooleanNetwork, *, extenders: Iterable[str] = ()) -> str:
    """Write ``net`` as rule text; parsing the result gives the same truth tables."""

    lines = [f"{EXTENDER_PREFIX} {name}" for name in extenders]
    for i, name in enumerate(net.names):
        expression = net.functions[i].expression
        if expression is None:
            expression = _dnf(net, i)
        lines.append(f"{name}, {expression}")
    return "\n".join(lines) + "\n"


def parse_thresholds(text: str, net: BooleanNetwork) -> dict[tuple[int, int], int]:
    """Read ``src, dst, threshold`` lines into a raw edge → threshold mapping."""

    thresholds: dict[tuple[int, int], int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        content = _strip_comment(raw)
        if not content.strip():
            continue
        parts = [part.strip() for part in content.split(",")]
        if len(parts) != 3:
            raise ThresholdParseError("expected 'src, dst, threshold'", line_no, 1)
        src, dst, value = parts
        for name in (src, dst):
            if name not in net.names:
                raise ThresholdParseError(f"unknown component {name!r}", line_no, content.find(name) + 1)
        try:
            threshold = int(value)
        except ValueError as exc:
            raise ThresholdParseError(f"threshold {value!r} is not an integer", line_no, content.rfind(value) + 1) from exc
        edge = (net.index(src), net.index(dst))
        if edge in thresholds:
            raise ThresholdParseError(f"duplicate threshold for {src} -> {dst}", line_no, 1)
        thresholds[edge] = threshold
    return thresholds


def _sign_label(signs: Iterable[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in sorted(signs, reverse=True))


def export_dot(graph: InteractionGraph | nx.DiGraph, *, extenders: Iterable[int] = ()) -> str:
    """Render an interaction graph or a transition graph as a DOT digraph.

    Interaction edges carry their sign set as label, extender components are
    drawn as dashed boxes; transition-graph nodes are labelled by bit string.
    """

    view = nx.DiGraph()
    if isinstance(graph, InteractionGraph):
        marked = set(extenders)
        for i, name in enumerate(graph.names):
            attrs = {"label": name}
            if i in marked:
                attrs.update(shape="box", style="dashed")
            view.add_node(name, **attrs)
        for source, target in graph.edges():
            view.add_edge(
                graph.names[source],
                graph.names[target],
                label=_sign_label(graph.signs(source, target)),
            )
    else:
        for node, data in graph.nodes(data=True):
            label = str(data.get("label", node))
            view.add_node(f"s{label}", label=label)
        for source, target in graph.edges():
            view.add_edge(
                f"s{graph.nodes[source].get('label', source)}",
                f"s{graph.nodes[target].get('label', target)}",
            )
    return nx.nx_pydot.to_pydot(view).to_string()


def export_report(record: BaseModel) -> str:
    """Deterministic JSON (sorted keys, compact separators) with a ``kind`` field."""

    return json.dumps(record.model_dump(mode="json"), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


__all__ = [
    "NetworkDocument",
    "Rule",
    "build_network",
    "export_dot",
    "export_report",
    "format_expr",
    "parse_bnet",
    "parse_document",
    "parse_extended_bnet",
    "parse_thresholds",
    "serialize_bnet",
]
