import io

import pytest
from hypothesis import given, settings

from conftest import graphs, to_nx
from rperg.errors import EdgeListError
from rperg.graph import (Graph, connected_components, degree_sequence, format_edge_list,
                         largest_connected_component, parse_edge_list, read_edge_list)


def test_parse_triangle():
    p = parse_edge_list(b"0 1\n1 2\n2 0\n")
    assert (p.graph.n, p.graph.m, p.dropped) == (3, 3, 0)


def test_parse_drops_self_loop_and_comments():
    p = parse_edge_list("# c\n5 5\n5 6\n")
    assert (p.graph.n, p.graph.m, p.dropped) == (2, 1, 1)
    assert p.original_ids == [5, 6]


def test_parse_merges_reversed_duplicates():
    p = parse_edge_list("1 2\n2 1\n1 2\n")
    assert p.graph.m == 1 and p.dropped == 2


def test_parse_accepts_file_objects_and_extra_columns():
    p = parse_edge_list(io.BytesIO(b"% konect\n10 20 1 99\n20 30 1\n"))
    assert p.graph.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text,line", [("0 1\n2\n", 2), ("0 x\n", 1), ("# ok\n\n1 2.5\n", 3)])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(EdgeListError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_ids_compacted_in_sorted_order():
    p = parse_edge_list("100 7\n7 3\n")
    assert p.graph.vertices() == [0, 1, 2]
    assert p.original_ids == [3, 7, 100]
    assert p.graph.edges() == [(0, 1), (1, 2)]


def test_lcc_picks_largest():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0), (3, 4)])
    lcc = largest_connected_component(g)
    assert (lcc.n, lcc.m) == (3, 3)


def test_lcc_tie_goes_to_component_with_vertex_zero():
    g = Graph.from_edges([(2, 3), (0, 1)])
    lcc = largest_connected_component(g)
    assert lcc.edges() == [(0, 1)] and lcc.n == 2
    g = Graph.from_edges([(5, 6), (1, 9)])
    # {1, 9} holds the smaller id
    assert largest_connected_component(g).n == 2


def test_lcc_empty():
    assert largest_connected_component(Graph.empty()).n == 0


def test_degree_sequence_examples():
    assert degree_sequence(Graph.from_edges([(0, 1), (1, 2), (2, 0)])) == [2, 2, 2]
    assert degree_sequence(Graph.from_edges([(0, 1), (0, 2), (0, 3)])) == [3, 1, 1, 1]
    assert degree_sequence(Graph.from_edges([(0, 1), (1, 2)])) == [1, 2, 1]


def test_graph_is_simple_and_symmetric():
    g = Graph.from_edges([(0, 0), (0, 1), (1, 0), (1, 2)])
    assert g.m == 2
    for v in g:
        assert v not in g.neighbors(v)
        for w in g.neighbors(v):
            assert v in g.neighbors(w)


def test_write_read_roundtrip(tmp_path):
    g = Graph.from_edges([(3, 1), (1, 2), (2, 3), (0, 3)])
    path = tmp_path / "g.txt"
    path.write_text(format_edge_list(g))
    assert path.read_text() == "0 3\n1 2\n1 3\n2 3\n"
    assert read_edge_list(path).graph == g


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_serialize_parse_roundtrip_up_to_relabeling(g):
    import networkx as nx

    p = parse_edge_list(format_edge_list(g))
    core = g.subgraph([v for v in g if g.degree(v) > 0])
    assert nx.is_isomorphic(to_nx(p.graph), to_nx(core))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_degree_sum_and_lcc_degrees(g):
    assert sum(degree_sequence(g)) == 2 * g.m
    if g.m >= 1:
        lcc = largest_connected_component(g)
        assert lcc.is_compact()
        assert all(lcc.degree(v) >= 1 for v in lcc)
        assert len(connected_components(lcc)) == 1
