import pytest

from lincut.core import State, Subspace
from lincut.dynamics import trap_spaces
from lincut.errors import ExtensionError, NotATrapSpaceError
from lincut.extension import (
    cuttable_extension,
    extend,
    extended_reachable,
    full_extension,
    l_reachable,
    lift_trap_space,
    project_trap_space,
)
from lincut.structure import interaction_graph, verify_linear_cut


def test_extend_appends_named_extenders(swap):
    ext = extend(swap, [(0, 1)])

    assert ext.extended.names == ("x1", "x2", "e_x1_x2")
    assert ext.extender(0, 1) == 2
    assert ext.label(2) == "x1→x2"
    assert ext.extended.regulators(1) == (2,)
    assert ext.extended.regulators(2) == (0,)
    assert ext.reduce().logically_equal(swap)


def test_extend_rejects_non_interactions(swap):
    with pytest.raises(ExtensionError):
        extend(swap, [(0, 0)])


def test_unknown_extender_lookup(swap):
    with pytest.raises(ExtensionError):
        extend(swap, [(0, 1)]).extender(1, 0)


def test_embed_and_project(swap):
    ext = full_extension(swap)

    y = ext.embed(State.parse("01"))
    assert str(y) == "0101"
    assert ext.project(y) == State.parse("01")
    assert ext.is_canonical(y)
    assert not ext.is_canonical(State.parse("0110"))


def test_project_i_reads_the_extenders_of_a_target(swap):
    ext = full_extension(swap)
    y = State.parse("0110")

    assert str(ext.project_i(y, 1)) == "11"
    assert str(ext.project_i(y, 0)) == "00"


def test_states_of_wrong_length_are_rejected(swap):
    ext = full_extension(swap)

    with pytest.raises(ExtensionError):
        ext.embed(State.parse("010"))
    with pytest.raises(ExtensionError):
        ext.project(State.parse("01"))


def test_cuttable_extension_of_swap(swap):
    ext = cuttable_extension(swap)

    assert ext.edges == ((0, 1),)
    assert verify_linear_cut(interaction_graph(ext.extended), ext.extender_mask).ok


def test_cuttable_extension_of_five(five):
    ext = cuttable_extension(five)

    assert ext.edges == ((0, 2), (0, 3), (1, 4))
    assert verify_linear_cut(interaction_graph(ext.extended), ext.extender_mask).ok


def test_cuttable_extension_is_empty_when_nothing_cycles(identity):
    assert cuttable_extension(identity).edges == ()


def test_l_reachable_crosses_the_swap(swap):
    path = l_reachable(swap, [(0, 1)], State.parse("01"), State.parse("10"))

    assert [str(y) for y in path] == ["010", "110", "100", "101"]


def test_extended_reachable_requires_canonical_start(swap):
    ext = extend(swap, [(0, 1)])
    start = State.parse("011")

    with pytest.raises(ExtensionError):
        extended_reachable(ext, start, ext.embed(State.parse("10")))
    assert extended_reachable(ext, start, start, allow_noncanonical=True) == [start]


def test_full_extension_of_identity(identity):
    ext = full_extension(identity)

    assert ext.extended.names == ("x1", "e_x1_x1")
    assert [str(t) for t in trap_spaces(ext.extended)] == ["**", "00", "11"]


def test_lift_and_project_trap_spaces(identity):
    ext = full_extension(identity)

    assert str(lift_trap_space(ext, Subspace.parse("0"))) == "00"
    assert str(lift_trap_space(ext, Subspace.parse("*"))) == "**"
    assert str(project_trap_space(ext, Subspace.parse("00"))) == "0"


def test_trap_space_operations_reject_open_subspaces(swap, identity):
    with pytest.raises(NotATrapSpaceError):
        lift_trap_space(full_extension(swap), Subspace.parse("0*"))
    with pytest.raises(NotATrapSpaceError):
        project_trap_space(full_extension(identity), Subspace.parse("0*"))
