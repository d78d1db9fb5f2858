from itertools import permutations

import pytest
from hypothesis import given, settings

from cactus_gcc.cactus import NotCactusError
from cactus_gcc.graph import (Graph, bowtie, complement, complete_graph, cycle_graph,
                              is_connected, path_graph, prism3, star_graph)
from cactus_gcc.ordering import (ConstructionOrdering, OrderingError, PreconditionError,
                                 find_construction_ordering, validate_cdelta_graph,
                                 validate_delta_graph, validate_ordering)

from helpers import cacti


def test_c6_ordering():
    o = find_construction_ordering(cycle_graph(6))
    assert o.order == (0, 1, 2, 3, 4, 5)
    assert o.prior_counts == [0, 1, 1, 1, 1, 2]
    assert validate_ordering(cycle_graph(6), o)


def test_k4_rejected():
    with pytest.raises(NotCactusError):
        find_construction_ordering(complete_graph(4))
    v = validate_ordering(complete_graph(4), [0, 1, 2, 3])
    assert not v and "position 3" in v.violations[0]


def test_bowtie_round_trip():
    g = bowtie()
    o = find_construction_ordering(g)
    assert max(o.prior_counts) <= 2
    again = ConstructionOrdering.from_order(g, o.order)
    assert again == o and validate_ordering(g, again)


def test_tree_orderings_have_one_prior_each():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)])
    o = find_construction_ordering(g)
    assert o.prior_counts[1:] == [1] * 6


def test_validate_rejects_bad_base_and_gaps():
    g = path_graph(5)
    assert not validate_ordering(g, [0, 2, 4, 1, 3])
    assert not validate_ordering(g, [0, 1, 2, 4, 3])
    assert validate_ordering(g, [0, 1, 2, 4, 3], require_connected_prefix=False) is not None


def test_malformed_permutation():
    with pytest.raises(OrderingError):
        validate_ordering(path_graph(4), [0, 1, 1, 3])
    with pytest.raises(OrderingError):
        ConstructionOrdering.from_order(path_graph(3), [0, 1])
    with pytest.raises(OrderingError):
        find_construction_ordering(path_graph(2))


def test_prism_is_delta_graph():
    # {0,2,4} and {1,3,5} are triangles; the ordering starts with an independent triple
    assert validate_delta_graph(prism3(), [0, 1, 3, 2, 4, 5]) or any(
        validate_delta_graph(prism3(), p) for p in permutations(range(6)))
    assert not validate_delta_graph(prism3(), [0, 2, 4, 1, 3, 5])


def test_c6_is_not_delta_graph_under_any_order():
    g = cycle_graph(6)
    assert not any(validate_delta_graph(g, p) for p in permutations(range(6)))


def test_c6_is_cdelta_graph():
    assert validate_cdelta_graph(cycle_graph(6), [0, 1, 2, 3, 4, 5])


def test_delta_cdelta_duality():
    g = cycle_graph(6)
    for p in list(permutations(range(6)))[::37]:
        assert bool(validate_cdelta_graph(g, p)) == bool(validate_delta_graph(complement(g), p))


def test_labelling_preconditions():
    with pytest.raises(PreconditionError):
        validate_delta_graph(path_graph(3), [0, 1, 2])
    with pytest.raises(PreconditionError):
        validate_cdelta_graph(star_graph(5), range(6))
    with pytest.raises(PreconditionError):
        validate_delta_graph(Graph.from_edges(4, [(0, 1), (2, 3)]), range(4))


@given(cacti(min_n=3, max_n=40))
def test_found_ordering_valid(g):
    o = find_construction_ordering(g)
    assert validate_ordering(g, o)
    assert max(o.prior_counts) <= 2


@settings(max_examples=200, deadline=None)
@given(cacti(min_n=6, max_n=16))
def test_found_ordering_is_cdelta_when_defined(g):
    if not is_connected(complement(g)):
        return
    o = find_construction_ordering(g)
    v = validate_cdelta_graph(g, o.order)
    assert v, v.violations
