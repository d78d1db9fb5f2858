import pytest
from hypothesis import given, settings, strategies as st

from cactus_gcc.cactus import (NotCactusError, SizeLimitError, cactus_oracle,
                               constructive_tree_cover, generate_cactus, is_tree_cover,
                               max_cycles, recognize_cactus, simple_cycles,
                               tree_cover_bounds, tree_cover_oracle)
from cactus_gcc.graph import (Graph, GraphError, bowtie, complete_bipartite, complete_graph,
                              cycle_graph, is_connected, path_graph, star_graph)

from helpers import brute_tree_cover_number, cacti, graphs

TRIANGLE_WITH_TAIL = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])


def c5_with_chord():
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])


def test_recognize_examples():
    p = recognize_cactus(Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]))
    assert (p.is_cactus, p.cycle_count, p.cls) == (True, 0, "tree")
    p = recognize_cactus(cycle_graph(6))
    assert (p.is_cactus, p.cycle_count, p.cls) == (True, 1, "unicyclic")
    assert not recognize_cactus(complete_graph(4)).is_cactus
    assert recognize_cactus(bowtie()).cls == "multicyclic"


def test_cactus_oracle_examples():
    assert cactus_oracle(bowtie())
    assert len(list(simple_cycles(bowtie()))) == 2
    assert not cactus_oracle(complete_graph(4))
    assert not cactus_oracle(c5_with_chord())
    assert not cactus_oracle(complete_bipartite(2, 3))


def test_oracle_limits():
    with pytest.raises(SizeLimitError):
        cactus_oracle(path_graph(13))
    with pytest.raises(SizeLimitError):
        tree_cover_oracle(path_graph(11))


@settings(max_examples=300)
@given(graphs(min_n=1, max_n=8))
def test_recognition_agrees_with_cycle_enumeration(g):
    if is_connected(g):
        assert recognize_cactus(g).is_cactus == cactus_oracle(g)


def test_generator_small_cases():
    assert generate_cactus(1, 0, 7) == Graph.from_edges(1, [])
    assert recognize_cactus(generate_cactus(12, 0, 3)).cls == "tree"
    g = generate_cactus(9, 2, 11)
    p = recognize_cactus(g)
    assert p.is_cactus and p.cycle_count == 2 and cactus_oracle(g)


def test_generator_rejects_infeasible():
    with pytest.raises(GraphError):
        generate_cactus(6, 3, 0)
    with pytest.raises(GraphError):
        generate_cactus(0, 0, 0)


def test_generator_deterministic():
    assert generate_cactus(30, 5, 99) == generate_cactus(30, 5, 99)
    assert generate_cactus(30, 5, 99) != generate_cactus(30, 5, 100)


@given(cacti(max_n=40))
def test_generator_output_is_requested_cactus(g):
    p = recognize_cactus(g)
    assert p.is_cactus and g.m == g.n - 1 + p.cycle_count


def test_generator_reaches_max_cycles():
    for n in range(1, 15):
        assert recognize_cactus(generate_cactus(n, max_cycles(n), n)).cycle_count == max_cycles(n)


def test_tree_cover_bounds_examples():
    for g in (TRIANGLE_WITH_TAIL, path_graph(7), bowtie()):
        p = recognize_cactus(g)
        tb = tree_cover_bounds(g, p)
        if g is TRIANGLE_WITH_TAIL:
            assert (tb.lower, tb.upper, tb.exact) == (2, 2, 2)
        elif g.n == 7:
            assert (tb.lower, tb.upper, tb.exact) == (1, 1, 1)
        else:
            assert tb.lower == 3 and tb.exact is None
    with pytest.raises(NotCactusError):
        tree_cover_bounds(complete_graph(4), recognize_cactus(complete_graph(4)))


def test_tree_cover_oracle_examples():
    assert tree_cover_oracle(star_graph(5)).value == 1
    assert tree_cover_oracle(cycle_graph(4)).value == 2
    assert tree_cover_oracle(bowtie()).value == 3


@settings(max_examples=60, deadline=None)
@given(cacti(min_n=1, max_n=7))
def test_tree_cover_oracle_matches_subset_dp(g):
    cover = tree_cover_oracle(g)
    assert is_tree_cover(g, cover.parts)
    assert cover.value == brute_tree_cover_number(g)


@settings(max_examples=100, deadline=None)
@given(cacti(min_n=1, max_n=10))
def test_tree_cover_within_bounds(g):
    p = recognize_cactus(g)
    tb = tree_cover_bounds(g, p)
    value = tree_cover_oracle(g).value
    assert tb.lower <= value <= tb.upper
    if p.cls == "unicyclic":
        assert value == 2
    if p.cls == "multicyclic":
        assert value >= 3


@given(cacti(max_n=40))
def test_constructive_cover_is_valid(g):
    cover = constructive_tree_cover(g)
    assert is_tree_cover(g, cover.parts)
    assert cover.value == recognize_cactus(g).cycle_count + 1


@settings(max_examples=150)
@given(cacti(min_n=9, max_n=12), st.data())
def test_recognition_agrees_near_oracle_limit(g, data):
    # perturb a cactus with a few extra edges so both answers occur
    extra = data.draw(st.lists(st.tuples(st.integers(0, g.n - 1), st.integers(0, g.n - 1)),
                               max_size=2))
    edges = set(g.edges()) | {(min(u, v), max(u, v)) for u, v in extra if u != v}
    h = Graph.from_edges(g.n, sorted(edges))
    assert recognize_cactus(h).is_cactus == cactus_oracle(h)
