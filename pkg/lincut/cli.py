"""Command-line surface: ``lincut <command> ...``.

Exit codes: 0 success, 1 failed verification, 2 usage or parse error,
3 negative answer (not cuttable, unreachable, no geodesic), 4 cap exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from pydantic import BaseModel, ValidationError

from lincut import config
from lincut.core import BooleanNetwork, State, Subspace, fixed_points
from lincut.dynamics import (
    Semantics,
    attractors,
    geodesic,
    min_trap_space_containing,
    minimal_trap_spaces,
    reachable,
    transition_graph,
    trap_spaces,
)
from lincut.errors import CapExceededError, LincutError
from lincut.extension import Extension, cuttable_extension, extend, full_extension
from lincut.harness import SUITE_NAMES, HarnessConfig, verify
from lincut.implicants import Strength, find_map
from lincut.netio import (
    export_dot,
    export_report,
    parse_bnet,
    parse_extended_bnet,
    parse_thresholds,
    serialize_bnet,
)
from lincut.refinement import ThresholdMap, make_refinement, mv_reachable
from lincut.reports import (
    AttractorEntry,
    AttractorsReport,
    EdgeEntry,
    FixedPointsReport,
    GeodesicReport,
    LinearCutReport,
    MinTrapSpaceReport,
    MvPathReport,
    NetworkInfoReport,
    PathReport,
    TrapSpacesReport,
)
from lincut.structure import find_linear_cut, interaction_graph, linear_components, verify_linear_cut
from lincut.utils.logging import configure_logging, get_logger

logger = get_logger("cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NEGATIVE = 3
EXIT_CAP = 4


class UsageError(LincutError):
    """Raised for arguments that parse but do not fit the network."""


def _load(path: Path, *, strict: bool = False) -> BooleanNetwork:
    return parse_bnet(path.read_text(encoding="utf-8"), strict=strict)


def _state(net: BooleanNetwork, text: str) -> State:
    x = State.parse(text)
    if x.n != net.n:
        raise UsageError(f"state {text!r} has {x.n} entries, network has {net.n} components")
    return x


def _subspace(net: BooleanNetwork, text: str) -> Subspace:
    t = Subspace.parse(text)
    if t.n != net.n:
        raise UsageError(f"subspace {text!r} has {t.n} entries, network has {net.n} components")
    return t


def _components(net: BooleanNetwork, text: str) -> int:
    """Comma-separated component names or 1-based indices."""

    mask = 0
    for token in (part.strip() for part in text.split(",")):
        if not token:
            continue
        if token.isdigit():
            index = int(token) - 1
            if not 0 <= index < net.n:
                raise UsageError(f"component index {token} is outside 1..{net.n}")
        else:
            index = net.index(token)
        mask |= 1 << index
    return mask


def _edges(net: BooleanNetwork, text: str) -> list[tuple[int, int]]:
    edges = []
    for token in (part.strip() for part in text.split(",")):
        if not token:
            continue
        source, sep, target = token.partition("->")
        if not sep:
            raise UsageError(f"interaction {token!r} must look like a->b")
        edges.append((net.index(source.strip()), net.index(target.strip())))
    return edges


def _levels(text: str) -> tuple[int, ...]:
    parts = text.split(",") if "," in text else list(text.strip())
    try:
        return tuple(int(part) for part in parts)
    except ValueError as exc:
        raise UsageError(f"invalid level vector {text!r}") from exc


def _names(net: BooleanNetwork, mask: int) -> list[str]:
    return [net.names[i] for i in range(net.n) if (mask >> i) & 1]


def _emit(args: argparse.Namespace, payload: BaseModel | str) -> None:
    text = payload if isinstance(payload, str) else export_report(payload) + "\n"
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_info(args: argparse.Namespace) -> int:
    net = _load(args.file)
    graph = interaction_graph(net)
    report = NetworkInfoReport(
        components=list(net.names),
        edges=[
            EdgeEntry(source=net.names[s], target=net.names[t], signs=sorted(graph.signs(s, t)))
            for s, t in graph.edges()
        ],
        linear_components=_names(net, linear_components(graph)),
    )
    _emit(args, report)
    return EXIT_OK


def cmd_cut(args: argparse.Namespace) -> int:
    net = _load(args.file)
    graph = interaction_graph(net)
    cut = find_linear_cut(graph, minimize=args.minimize)
    if cut is not None:
        _emit(args, LinearCutReport(cuttable=True, cut=_names(net, cut.cut)))
        return EXIT_OK
    check = verify_linear_cut(graph, linear_components(graph) & ~graph.isolated_loops())
    _emit(
        args,
        LinearCutReport(cuttable=False, violation=check.kind, witness=[net.names[i] for i in check.witness]),
    )
    return EXIT_NEGATIVE


def _build_extension(net: BooleanNetwork, args: argparse.Namespace) -> Extension:
    if args.edges:
        return extend(net, _edges(net, args.edges))
    if args.full:
        return full_extension(net)
    return cuttable_extension(net)


def cmd_extend(args: argparse.Namespace) -> int:
    net = _load(args.file)
    ext = _build_extension(net, args)
    _emit(args, serialize_bnet(ext.extended, extenders=ext.extender_names()))
    return EXIT_OK


def cmd_attractors(args: argparse.Namespace) -> int:
    net = _load(args.file)
    sem = Semantics.parse(args.sem)
    found = attractors(net, sem)
    report = AttractorsReport(
        semantics=sem.value,
        attractors=[AttractorEntry(states=[str(x) for x in a.states], fixed_point=a.fixed_point) for a in found],
    )
    _emit(args, report)
    return EXIT_OK


def cmd_trapspaces(args: argparse.Namespace) -> int:
    net = _load(args.file)
    spaces = minimal_trap_spaces(net) if args.minimal else trap_spaces(net)
    _emit(args, TrapSpacesReport(minimal=args.minimal, trap_spaces=[str(t) for t in spaces]))
    return EXIT_OK


def cmd_mintrap(args: argparse.Namespace) -> int:
    net = _load(args.file)
    x = _state(net, args.state)
    _emit(args, MinTrapSpaceReport(state=str(x), trap_space=str(min_trap_space_containing(net, x))))
    return EXIT_OK


def cmd_fixpoints(args: argparse.Namespace) -> int:
    net = _load(args.file)
    _emit(args, FixedPointsReport(states=[str(x) for x in fixed_points(net)]))
    return EXIT_OK


def cmd_reach(args: argparse.Namespace) -> int:
    net = _load(args.file)
    x = _state(net, args.source)
    target = _subspace(net, args.target)
    if args.sem == "lreach":
        ext = cuttable_extension(net)
        path = reachable(
            ext.extended,
            ext.embed(x),
            Semantics.ASYNCHRONOUS,
            lambda y: ext.is_canonical(y) and target.contains(ext.project(y)),
        )
        semantics = "lreach"
    else:
        sem = Semantics.parse(args.sem)
        path = reachable(net, x, sem, target)
        semantics = sem.value
    report = PathReport(
        semantics=semantics,
        source=str(x),
        target=str(target),
        reachable=path is not None,
        path=[str(y) for y in path or []],
    )
    _emit(args, report)
    if path is None:
        print("unreachable", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_geodesic(args: argparse.Namespace) -> int:
    net = _load(args.file)
    x = _state(net, args.source)
    mask = _components(net, args.flip)
    sem = Semantics.parse(args.sem)
    path = geodesic(net, x, mask, sem)
    certificate = None
    if args.certificate and path is not None:
        strength = Strength.STRONG if sem is Semantics.ASYNCHRONOUS else Strength.CONSISTENT
        imap = find_map(net, x, mask, strength)
        if imap is not None:
            certificate = imap.certificate(net.names)
    report = GeodesicReport(
        semantics=sem.value,
        source=str(x),
        flip=_names(net, mask),
        exists=path is not None,
        path=[str(y) for y in path or []],
        certificate=certificate,
    )
    _emit(args, report)
    return EXIT_OK if path is not None else EXIT_NEGATIVE


def cmd_refine(args: argparse.Namespace) -> int:
    net = _load(args.file)
    raw = parse_thresholds(args.thresholds.read_text(encoding="utf-8"), net)
    ref = make_refinement(net, ThresholdMap.build(interaction_graph(net), raw, default=args.default_threshold))
    source, target = ref.check(_levels(args.source)), ref.check(_levels(args.target))
    path = mv_reachable(ref, source, target)
    report = MvPathReport(
        source=list(source),
        target=list(target),
        reachable=path is not None,
        path=[list(levels) for levels in path or []],
    )
    _emit(args, report)
    return EXIT_OK if path is not None else EXIT_NEGATIVE


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = HarnessConfig(
        suite=args.suite,
        seed=args.seed,
        count=args.count,
        n=args.n,
        max_indegree=args.max_indegree,
        sample=args.sample,
        workers=args.workers or config.WORKERS,
        dump_dir=args.dump_dir or config.DUMP_DIR,
    )
    report = verify(cfg)
    _emit(args, report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_export(args: argparse.Namespace) -> int:
    net, marked = parse_extended_bnet(args.file.read_text(encoding="utf-8"))
    if args.graph == "stg":
        _emit(args, export_dot(transition_graph(net, Semantics.parse(args.sem))))
    else:
        extenders = [net.index(name) for name in args.extender] if args.extender else marked
        _emit(args, export_dot(interaction_graph(net), extenders=extenders))
    return EXIT_OK


def _parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="lincut",
        description="Linear cuts, extensions and dynamics of Boolean networks.",
    )
    parser.add_argument("--output", type=Path, help="Write the result to this file instead of stdout.")
    parser.add_argument("--log-level", default=None, help="Override LINCUT_LOG_LEVEL.")
    commands = parser.add_subparsers(dest="command", required=True)

    def network_command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("file", type=Path)
        sub.set_defaults(handler=handler)
        return sub

    network_command("info", cmd_info, "components, interactions, signs and linear components")

    sub = network_command("cut", cmd_cut, "find a linear cut or report the violation")
    sub.add_argument("--minimize", action="store_true", help="Greedily drop members that the cut can spare.")

    sub = network_command("extend", cmd_extend, "write an extended network")
    mode = sub.add_mutually_exclusive_group()
    mode.add_argument("--full", action="store_true")
    mode.add_argument("--cuttable", action="store_true")
    mode.add_argument("--edges", help="Interactions to extend, e.g. 'a->b,b->c'.")

    sub = network_command("attractors", cmd_attractors, "attractors as terminal SCCs")
    sub.add_argument("--sem", default="async", choices=["sync", "async", "general"])

    sub = network_command("trapspaces", cmd_trapspaces, "all or minimal trap spaces")
    sub.add_argument("--minimal", action="store_true")

    sub = network_command("mintrap", cmd_mintrap, "minimal trap space containing a state")
    sub.add_argument("--state", required=True)

    network_command("fixpoints", cmd_fixpoints, "fixed points")

    sub = network_command("reach", cmd_reach, "shortest path between a state and a state or subspace")
    sub.add_argument("--from", dest="source", required=True)
    sub.add_argument("--to", dest="target", required=True)
    sub.add_argument("--sem", default="async", choices=["sync", "async", "general", "permissive", "lreach"])

    sub = network_command("geodesic", cmd_geodesic, "geodesic flipping a set of components")
    sub.add_argument("--from", dest="source", required=True)
    sub.add_argument("--flip", required=True, help="Comma-separated names or 1-based indices.")
    sub.add_argument("--sem", default="async", choices=["async", "permissive"])
    sub.add_argument("--certificate", action="store_true")

    sub = network_command("refine", cmd_refine, "reachability in a threshold refinement")
    sub.add_argument("--thresholds", type=Path, required=True)
    sub.add_argument("--from", dest="source", required=True)
    sub.add_argument("--to", dest="target", required=True)
    sub.add_argument("--default-threshold", type=int, default=None)

    sub = network_command("export", cmd_export, "DOT rendering of the interaction or transition graph")
    sub.add_argument("--graph", default="interaction", choices=["interaction", "stg"])
    sub.add_argument("--sem", default="async", choices=["sync", "async", "general"])
    sub.add_argument(
        "--extender",
        action="append",
        help="Component drawn as an extender; defaults to those named in the file's extender header.",
    )

    sub = commands.add_parser("verify", help="run the property suites on random networks")
    sub.add_argument("suite", choices=[*SUITE_NAMES, "all"])
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--count", type=int, default=10)
    sub.add_argument("--n", type=int, default=4)
    sub.add_argument("--max-indegree", type=int, default=None)
    sub.add_argument("--sample", type=int, default=6)
    sub.add_argument("--workers", type=int, default=None)
    sub.add_argument(
        "--dump-dir", type=Path, default=None, help="Where failing networks are written (LINCUT_DUMP_DIR)."
    )
    sub.set_defaults(handler=cmd_verify)

    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    args = _parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (LincutError, ValidationError, ValueError, OSError) as exc:
        logger.debug("Command failed", extra={"command": args.command, "error": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
