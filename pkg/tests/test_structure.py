import pytest

from lincut.core import members
from lincut.errors import LinearCutError
from lincut.netio import parse_bnet
from lincut.structure import find_linear_cut, interaction_graph, is_linear, linear_components, verify_linear_cut


def test_interaction_graph_edges_and_signs(five, negation):
    graph = interaction_graph(five)
    assert graph.edges() == [(0, 2), (0, 3), (1, 4), (2, 0), (3, 1), (4, 1)]
    assert all(graph.signs(s, t) == {1} for s, t in graph.edges())

    neg = interaction_graph(negation)
    assert neg.signs(0, 0) == {-1}
    assert neg.signs(0, 1) == {1}


def test_xor_edge_carries_both_signs():
    graph = interaction_graph(parse_bnet("x1, x1 & !x2 | !x1 & x2\nx2, x2\n"))

    assert graph.signs(1, 0) == {-1, 1}
    assert graph.signs(0, 0) == {-1, 1}


def test_linear_components(five):
    graph = interaction_graph(five)

    assert members(linear_components(graph)) == [2, 3, 4]
    assert not is_linear(graph, 0)


def test_find_linear_cut_of_five(five):
    cut = find_linear_cut(interaction_graph(five))

    assert cut is not None
    assert cut.components() == [2, 3, 4]


def test_minimal_cut_members_do_not_interact(five):
    graph = interaction_graph(five)
    cut = find_linear_cut(graph)

    assert not any(graph.graph.has_edge(i, j) for i in cut.components() for j in cut.components())


def test_find_linear_cut_minimizes_swap(swap):
    cut = find_linear_cut(interaction_graph(swap))

    assert cut is not None
    assert cut.components() == [1]


def test_find_linear_cut_without_minimizing(swap):
    cut = find_linear_cut(interaction_graph(swap), minimize=False)

    assert cut.components() == [0, 1]


def test_isolated_loop_needs_no_cut(identity):
    cut = find_linear_cut(interaction_graph(identity))

    assert cut is not None
    assert cut.components() == []


def test_network_without_linear_cut():
    graph = interaction_graph(parse_bnet("x1, x1 & x2\nx2, x1 & x2\n"))

    assert find_linear_cut(graph) is None


@pytest.mark.parametrize(
    ("cut", "kind", "witness"),
    [
        (0b00000, "cycle", (0, 2)),
        (0b11000, "cycle", (0, 2)),
        (0b10100, "path", (0, 3, 1)),
        (0b00001, "non_linear", (0,)),
        (0b11100, "ok", ()),
    ],
)
def test_verify_linear_cut_reports_witnesses(five, cut, kind, witness):
    check = verify_linear_cut(interaction_graph(five), cut)

    assert check.kind == kind
    assert check.witness == witness


def test_cycle_witness_edges(five):
    check = verify_linear_cut(interaction_graph(five), 0)

    assert check.witness_edges() == [(0, 2), (2, 0)]


def test_verify_rejects_components_outside_network(swap):
    with pytest.raises(LinearCutError):
        verify_linear_cut(interaction_graph(swap), 0b100)
