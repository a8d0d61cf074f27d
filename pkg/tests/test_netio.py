import json

import pytest

from lincut.core import BooleanNetwork
from lincut.errors import DuplicateTargetError, NetworkParseError, ThresholdParseError, UndeclaredVariableError
from lincut.extension import full_extension
from lincut.netio import (
    export_dot,
    export_report,
    parse_bnet,
    parse_document,
    parse_extended_bnet,
    parse_thresholds,
    serialize_bnet,
)
from lincut.dynamics import transition_graph
from lincut.reports import FixedPointsReport
from lincut.structure import interaction_graph


def test_parse_respects_operator_precedence():
    net = parse_bnet("a, !a | a & b\nb, b\n")

    # !a | (a & b): false only for a=1, b=0
    assert net.functions[0].table == (1, 0, 1, 1)


def test_parse_skips_header_and_comments():
    net = parse_bnet("targets, factors\n# comment\n\nx1, !x1  # trailing\n")

    assert net.names == ("x1",)
    assert net.functions[0].table == (1, 0)


def test_parse_error_reports_position():
    with pytest.raises(NetworkParseError) as excinfo:
        parse_bnet("x1, x1\nx2, x1 &\n")

    assert excinfo.value.line == 2
    assert excinfo.value.column == 9


def test_missing_comma_is_a_parse_error():
    with pytest.raises(NetworkParseError) as excinfo:
        parse_bnet("x1 x1\n")

    assert excinfo.value.line == 1


def test_undeclared_variable_in_strict_mode():
    with pytest.raises(UndeclaredVariableError) as excinfo:
        parse_bnet("x1, y\n", strict=True)

    assert (excinfo.value.line, excinfo.value.column) == (1, 5)


def test_undeclared_variable_becomes_input():
    net = parse_bnet("x1, y\n")

    assert net.names == ("x1", "y")
    assert net.regulators(1) == (1,)
    assert net.functions[1].table == (0, 1)


def test_duplicate_target():
    with pytest.raises(DuplicateTargetError) as excinfo:
        parse_bnet("x1, x1\nx1, 0\n")

    assert excinfo.value.line == 2


def test_extender_header_lines_are_collected():
    document = parse_document("# extender: e_x1_x1\nx1, e_x1_x1\ne_x1_x1, x1\n")

    assert document.extenders == ("e_x1_x1",)
    assert document.names == ("x1", "e_x1_x1")


def test_extended_rules_report_extender_indices(identity):
    ext = full_extension(identity)
    text = serialize_bnet(ext.extended, extenders=ext.extender_names())

    net, extenders = parse_extended_bnet(text)

    assert net.names == ("x1", "e_x1_x1")
    assert extenders == [1]
    assert parse_extended_bnet("x1, x1\n")[1] == []


def test_serialize_keeps_parsed_expressions(swap):
    assert serialize_bnet(swap) == "x1, x2\nx2, x1\n"


def test_serialize_writes_dnf_for_tables():
    net = BooleanNetwork.from_tables(["a", "b", "c"], [((0, 1), (0, 0, 0, 1)), ((0,), (1, 0)), ((), (1,))])

    assert serialize_bnet(net) == "a, a & b\nb, !a\nc, 1\n"


def test_serialized_extension_parses_back(identity):
    ext = full_extension(identity)
    text = serialize_bnet(ext.extended, extenders=ext.extender_names())

    assert text.startswith("# extender: e_x1_x1\n")
    assert parse_bnet(text).logically_equal(ext.extended)


def test_parse_thresholds(negation):
    assert parse_thresholds("x1, x1, 1\nx1, x2, 2  # level two\n", negation) == {(0, 0): 1, (0, 1): 2}


@pytest.mark.parametrize(
    "text",
    ["x1, x3, 1\n", "x1, x2\n", "x1, x2, two\n", "x1, x2, 1\nx1, x2, 2\n"],
)
def test_parse_thresholds_rejects_bad_lines(negation, text):
    with pytest.raises(ThresholdParseError):
        parse_thresholds(text, negation)


def test_export_dot_for_interaction_graph(negation):
    dot = export_dot(interaction_graph(negation), extenders=[1])

    assert "digraph" in dot
    assert "x1" in dot and "x2" in dot
    assert "dashed" in dot
    assert "+" in dot


def test_export_dot_for_transition_graph(swap):
    dot = export_dot(transition_graph(swap, "async"))

    assert "s01" in dot
    assert "s00" in dot


def test_export_report_is_sorted_and_compact():
    payload = export_report(FixedPointsReport(states=["00", "11"]))

    assert payload == '{"kind":"fixed_points","states":["00","11"]}'
    assert json.loads(payload)["kind"] == "fixed_points"
