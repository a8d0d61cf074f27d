import pytest

from lincut.core import State, Subspace
from lincut.errors import ImplicantMapError
from lincut.implicants import (
    ImplicantMap,
    Strength,
    blockers,
    direct_requirements,
    erequired,
    find_map,
    geodesic_from_map,
    is_consistent,
    is_strongly_consistent,
    requirement_graphs,
    required,
    strong_requirements,
    widen,
)
from lincut.netio import parse_bnet


@pytest.fixture
def swap_map(swap):
    return ImplicantMap.build(swap, State.parse("01"), {0: Subspace.parse("*1"), 1: Subspace.parse("0*")})


def test_requirement_sets_of_swap_map(swap_map):
    assert direct_requirements(swap_map, 0) == 0
    assert blockers(swap_map, 0) == 0b10
    assert strong_requirements(swap_map, 0) == 0b10
    assert strong_requirements(swap_map, 1) == 0b01


def test_swap_map_is_consistent_but_not_strongly(swap_map):
    graphs = requirement_graphs(swap_map)

    assert graphs.g.number_of_edges() == 0
    assert set(graphs.gplus.edges()) == {(0, 1), (1, 0)}
    assert is_consistent(swap_map)
    assert not is_strongly_consistent(swap_map)
    assert erequired(swap_map, 0) == 0b11
    assert required(swap_map, 0) == 0


def test_certificate_uses_component_names(swap, swap_map):
    assert swap_map.certificate(swap.names) == {"x1": "*1", "x2": "0*"}


def test_build_rejects_non_implicants(swap):
    with pytest.raises(ImplicantMapError):
        ImplicantMap.build(swap, State.parse("01"), {0: Subspace.parse("*0")})
    with pytest.raises(ImplicantMapError):
        ImplicantMap.build(swap, State.parse("01"), {5: Subspace.parse("**")})


def test_extended_requirements_stay_in_the_connected_component():
    net = parse_bnet("x1, x2\nx2, x1\nx3, x4\nx4, x3\n")
    imap = find_map(net, State.parse("0101"), 0b1111)

    assert imap is not None
    assert erequired(imap, 0) & ~0b0011 == 0
    assert erequired(imap, 2) & ~0b1100 == 0


def test_lookup_outside_domain(swap_map):
    with pytest.raises(ImplicantMapError):
        swap_map[2]


def test_find_map_for_swap(swap):
    x = State.parse("01")

    found = find_map(swap, x, 0b11)
    assert found is not None
    assert found.certificate(swap.names) == {"x1": "*1", "x2": "0*"}
    assert find_map(swap, x, 0b11, Strength.STRONG) is None


def test_permissive_geodesic_from_swap_map(swap, swap_map):
    path = geodesic_from_map(swap, swap_map, "permissive")

    assert [str(x) for x in path] == ["01", "11", "10"]


def test_asynchronous_geodesic_needs_strong_map(swap, swap_map):
    with pytest.raises(ImplicantMapError):
        geodesic_from_map(swap, swap_map, "async")
    with pytest.raises(ValueError):
        geodesic_from_map(swap, swap_map, "sync")


def test_chain_requirements_follow_the_chain():
    net = parse_bnet("a, 1\nb, a\nc, b\n")
    x = State.parse("000")

    found = find_map(net, x, 0b111, "strong")
    assert found is not None
    assert required(found, 2) == 0b011
    assert [str(y) for y in geodesic_from_map(net, found)] == ["000", "100", "110", "111"]


def test_strong_map_of_five_gives_asynchronous_geodesic(five):
    x = State.parse("11011")

    found = find_map(five, x, 0b11011, Strength.STRONG)
    assert found is not None
    assert is_strongly_consistent(found)
    assert str(found[1]) == "***0*"
    assert required(found, 1) == 0b01001

    path = geodesic_from_map(five, found)
    assert [str(y) for y in path] == ["11011", "01011", "01001", "00001", "00000"]


def test_widen_frees_coordinates_that_stay_implicant(swap):
    imap = ImplicantMap.build(swap, State.parse("01"), {0: Subspace.parse("01")})

    wider = widen(swap, imap, 0, 0)
    assert wider is not None
    assert str(wider[0]) == "*1"
    assert widen(swap, imap, 0, 1) is None
    assert widen(swap, wider, 0, 0) is None
