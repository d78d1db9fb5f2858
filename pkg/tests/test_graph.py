import json

import pytest
from hypothesis import given, strategies as st

from cactus_gcc.formats import (ParseError, graph_to_edge_list, graph_to_json, parse_graph)
from cactus_gcc.graph import (DisconnectedGraphError, Graph, GraphError, block_decomposition,
                              bowtie, complement, complete_graph, components, cycle_graph,
                              cycle_walk, degree_stats, empty_graph, induced_subgraph,
                              is_connected, path_graph, prism3, star_graph)

from helpers import deletion_disconnects, graphs


def test_rejects_invalid_adjacency():
    with pytest.raises(GraphError):
        Graph(2, (frozenset({1}), frozenset()))
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_complement_examples():
    assert complement(complete_graph(3)) == empty_graph(3)
    prism = complement(cycle_graph(6))
    assert degree_stats(prism) == (3, 3)
    assert prism == prism3() or sorted(map(len, prism.adj)) == [3] * 6
    # two disjoint triangles {0,2,4}, {1,3,5} joined by the matching i - i+3
    assert {frozenset(e) for e in prism.edges()} == {frozenset(e) for e in prism3().edges()}


def test_induced_subgraph_examples():
    c6 = cycle_graph(6)
    assert induced_subgraph(c6, [1, 2, 3]) == path_graph(3)
    assert induced_subgraph(c6, range(6)) == c6
    assert induced_subgraph(complete_graph(5), [0, 2, 4]) == complete_graph(3)
    with pytest.raises(GraphError):
        induced_subgraph(c6, [7])


def test_degree_stats():
    assert degree_stats(cycle_graph(6)) == (2, 2)
    assert degree_stats(star_graph(4)) == (1, 4)


def test_connectivity():
    assert is_connected(path_graph(5))
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not is_connected(two_k2)
    assert len(components(two_k2)) == 2
    assert is_connected(empty_graph(1)) and len(components(empty_graph(1))) == 1


def test_blocks_of_tree():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    bd = block_decomposition(g)
    assert len(bd.blocks) == 5 and all(b.kind == "edge" for b in bd.blocks)
    assert bd.cut_vertices == {1, 3}


def test_blocks_of_cycle():
    bd = block_decomposition(cycle_graph(7))
    assert [b.kind for b in bd.blocks] == ["cycle"]
    assert not bd.cut_vertices


def test_blocks_of_bowtie_match_brute_force():
    g = bowtie()
    bd = block_decomposition(g)
    assert sorted(b.kind for b in bd.blocks) == ["cycle", "cycle"]
    assert bd.cut_vertices == {v for v in range(g.n) if deletion_disconnects(g, v)} == {0}


def test_blocks_flag_non_cycle_blocks():
    assert block_decomposition(complete_graph(4)).blocks[0].kind == "biconnected"


def test_block_decomposition_needs_connected():
    with pytest.raises(DisconnectedGraphError):
        block_decomposition(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_cycle_walk():
    c = block_decomposition(cycle_graph(5)).blocks[0]
    assert cycle_walk(c, 0) == [0, 1, 2, 3, 4]
    assert cycle_walk(c, 2, toward=1) == [2, 1, 0, 4, 3]


@given(graphs(min_n=1, max_n=9))
def test_blocks_partition_edges_and_cut_vertices_exact(g):
    if not is_connected(g):
        return
    bd = block_decomposition(g)
    all_edges = [e for b in bd.blocks for e in b.edges]
    assert sorted(all_edges) == g.edges()
    multi = {v for v in range(g.n) if len(bd.blocks_of[v]) >= 2}
    assert multi == set(bd.cut_vertices)
    assert bd.cut_vertices == {v for v in range(g.n) if deletion_disconnects(g, v)}


# ---- formats ----

def test_edge_list_roundtrip_and_comments():
    text = "# a C_4\n4 4\n0 1\n\n1 2  # edge\n2 3\n3 0\n"
    g, labels = parse_graph(text)
    assert g == cycle_graph(4) and labels == [0, 1, 2, 3]
    assert parse_graph(graph_to_edge_list(g))[0] == g


def test_json_roundtrip_canonical():
    g = bowtie()
    doc = graph_to_json(g)
    assert doc["edges"] == sorted(doc["edges"]) and all(u < v for u, v in doc["edges"])
    assert parse_graph(json.dumps(doc))[0] == g


def test_json_with_arbitrary_labels_is_remapped():
    g, labels = parse_graph('{"edges": [["b", "a"], ["b", "c"]]}')
    assert labels == ["a", "b", "c"]
    assert g == Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.mark.parametrize("text", ["", "   \n", "3\n", "2 1\n0 x\n", "3 2\n0 1\n", "2 1\n0 1 2\n",
                                  "{bad json", '{"n": 2}'])
def test_parse_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_parse_error_is_graph_error():
    assert issubclass(ParseError, GraphError)


@given(graphs(min_n=1, max_n=10), st.data())
def test_induced_subgraph_composes(g, data):
    vs = sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=1)))
    sub = induced_subgraph(g, vs)
    ws = sorted(data.draw(st.sets(st.integers(0, sub.n - 1), min_size=1)))
    assert induced_subgraph(sub, ws) == induced_subgraph(g, [vs[w] for w in ws])


@given(graphs(min_n=0, max_n=10))
def test_complement_involution(g):
    assert complement(complement(g)) == g
