import pytest

from qldpc_bounds.codes import ClassicalCode, make_family
from qldpc_bounds.connectivity import (
    are_decoupled,
    build_connectivity,
    classical_connectivity,
    inner_boundary,
    ldpc_degrees,
    outer_boundary,
)
from qldpc_bounds.errors import InputError
from qldpc_bounds.gf2 import BinaryMatrix
from qldpc_bounds.graph import Graph, format_graph, graph_from_json, graph_to_json, parse_graph
from qldpc_bounds.errors import ParseError


def test_repetition_graph_is_a_path():
    g = build_connectivity(make_family("repetition", 4))
    assert g.edges == ((0, 1), (1, 2), (2, 3))


def test_steane_graph_is_complete_on_shared_checks():
    g = build_connectivity(make_family("steane"))
    # qubit 6 sits in every Z check
    assert g.degree(6) == 6


def test_edges_come_from_shared_supports():
    code = make_family("surface", 3)
    g = build_connectivity(code)
    shared = set()
    for gen in code.generators:
        sup = sorted(gen.support)
        shared.update((a, b) for i, a in enumerate(sup) for b in sup[i + 1 :])
    assert set(g.edges) == shared


def test_boundaries_on_a_path():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert outer_boundary(g, {1, 2}) == {0, 3}
    assert inner_boundary(g, {1, 2}) == {1, 2}
    assert inner_boundary(g, {0, 1, 2}) == {2}
    with pytest.raises(InputError):
        outer_boundary(g, {7})


def test_decoupling():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert are_decoupled(g, [{0}, {2}, {4}])
    assert not are_decoupled(g, [{0}, {1}])
    assert are_decoupled(g, [])
    with pytest.raises(InputError):
        are_decoupled(g, [{0, 1}, {1}])


def test_ldpc_degrees_of_toric_code():
    assert ldpc_degrees(make_family("toric", 3)) == (4, 4)


def test_classical_connectivity():
    c = ClassicalCode(3, BinaryMatrix.from_array([[1, 1, 0], [0, 1, 1]]))
    assert classical_connectivity(c).edges == ((0, 1), (1, 2))


def test_graph_formats_round_trip():
    g = build_connectivity(make_family("toric", 2))
    assert parse_graph(format_graph(g)) == g
    assert graph_from_json(graph_to_json(g)) == g
    with pytest.raises(ParseError, match="line 2"):
        parse_graph("graph v1 n=3\n0 5\n")
    with pytest.raises(ParseError):
        parse_graph("")


def test_graph_helpers():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    assert g.components() == [[0, 1, 2], [3, 4], [5]]
    sub, labels = g.induced([1, 2, 3])
    assert labels == [1, 2, 3] and sub.edges == ((0, 1),)
    assert g.bfs_layers(0) == [[0], [1], [2]]
    assert g.distances_from([0]) == {0: 0, 1: 1, 2: 2}
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 0)])
