import random

import pytest

from lincut.core import State
from lincut.errors import CapExceededError, RefinementError
from lincut.extension import extend, full_extension
from lincut.refinement import (
    ThresholdMap,
    booltostr,
    make_refinement,
    mv_reachable,
    mv_successors,
    mvtobuf,
    negative_self_loops,
    random_threshold_map,
    refined,
)
from lincut.structure import interaction_graph


@pytest.fixture
def ref(negation):
    return make_refinement(negation, {(0, 0): 1, (0, 1): 2})


def test_maxima_follow_outgoing_thresholds(ref):
    assert ref.maxima == (2, 1)
    assert ref.size() == 6
    assert len(list(ref.states())) == 6


@pytest.mark.parametrize(
    ("level", "image"),
    [(0, (2, 0)), (1, (0, 0)), (2, (0, 1))],
)
def test_refined_images(ref, level, image):
    assert refined(ref, (level, 0)) == image
    assert refined(ref, (level, 1)) == image


def test_unit_steps(ref):
    assert mv_successors(ref, (0, 0)) == [(1, 0)]
    assert mv_successors(ref, (1, 0)) == [(0, 0)]


def test_mv_reachable(ref):
    assert mv_reachable(ref, (0, 0), (2, 0)) is None
    assert mv_reachable(ref, (0, 0), (1, 0)) == [(0, 0), (1, 0)]


def test_mv_reachable_respects_cap(ref):
    with pytest.raises(CapExceededError):
        mv_reachable(ref, (0, 0), (1, 0), cap=2)


def test_levels_out_of_range(ref):
    with pytest.raises(RefinementError):
        refined(ref, (3, 0))
    with pytest.raises(RefinementError):
        refined(ref, (0,))


def test_booltostr_maps_to_extreme_levels(ref):
    assert booltostr(ref, State.parse("10")) == (2, 0)
    assert booltostr(ref, State.parse("01")) == (0, 1)


def test_mvtobuf_on_full_extension(ref, negation):
    ext = full_extension(negation)

    assert str(mvtobuf(ref, ext, (1, 0))) == "*010"
    assert str(mvtobuf(ref, ext, (2, 1))) == "1111"


def test_mvtobuf_requires_full_extension(ref, negation):
    partial = extend(negation, [(0, 1)])

    with pytest.raises(RefinementError):
        mvtobuf(ref, partial, (1, 0))
    assert str(mvtobuf(ref, partial, (1, 0), require_full=False)) == "*00"


@pytest.mark.parametrize(
    "mapping",
    [
        {(0, 0): 1, (0, 1): 2, (1, 0): 1},
        {(0, 0): 0, (0, 1): 2},
        {(0, 0): 1},
    ],
)
def test_invalid_threshold_maps(negation, mapping):
    with pytest.raises(RefinementError):
        ThresholdMap.build(interaction_graph(negation), mapping)


def test_default_threshold_fills_missing_edges(negation):
    tmap = ThresholdMap.build(interaction_graph(negation), {(0, 1): 2}, default=1)

    assert tmap.as_dict() == {(0, 0): 1, (0, 1): 2}
    assert tmap[(0, 1)] == 2


def test_random_threshold_map_is_seeded(five):
    graph = interaction_graph(five)

    first = random_threshold_map(graph, random.Random(7), cap=3)
    second = random_threshold_map(graph, random.Random(7), cap=3)
    assert first == second
    assert all(1 <= value <= 3 for value in first.as_dict().values())


def test_negative_self_loops(negation, identity):
    assert negative_self_loops(interaction_graph(negation)) == [0]
    assert negative_self_loops(interaction_graph(identity)) == []
