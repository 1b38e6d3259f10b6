import networkx as nx
import pytest
from hypothesis import given

from faultdom.graph import (GraphError, LatticeKind, build_graph, closed_neighborhood, complete, cycle,
                            distance, find_twins, format_edge_list, girth, is_twin_free, make_family,
                            make_torus, parse_dot, parse_edge_list, path, petersen, to_dot, tree3_ball)

from .conftest import graphs


def test_triangle():
    G = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert [G.degree(v) for v in range(3)] == [2, 2, 2]


def test_petersen_structure(P):
    assert (P.n, P.m) == (10, 15)
    assert P.min_degree == P.max_degree == 3
    assert girth(P) == 5
    assert is_twin_free(P)
    assert P.label(0) == "v1" and P.label(9) == "v10"


@pytest.mark.parametrize("edges,message", [
    ([(0, 0)], "self-loop"),
    ([(0, 2)], "outside"),
    ([(0, 1), (1, 0)], "duplicate"),
])
def test_build_graph_errors(edges, message):
    with pytest.raises(GraphError, match=message):
        build_graph(2, edges)


def test_closed_neighborhoods(C5, P):
    assert closed_neighborhood(C5, 0) == {4, 0, 1}
    assert closed_neighborhood(P, 0) == {0, 1, 4, 5}
    assert closed_neighborhood(build_graph(1, []), 0) == {0}
    with pytest.raises(GraphError):
        closed_neighborhood(C5, 5)


def test_twins(C4, P):
    assert find_twins(C4) == [(0, 2), (1, 3)]
    assert len(find_twins(complete(4))) == 6
    assert find_twins(P) == []


def test_distances(P):
    assert distance(cycle(6), 0, 3) == 3
    assert distance(P, 0, 7) == 2
    assert distance(build_graph(4, [(0, 1), (2, 3)]), 0, 2) is None


def test_families():
    C = cycle(5)
    assert (C.n, C.m, C.min_degree, C.max_degree) == (5, 5, 2, 2)
    assert tree3_ball(2).n == 10
    assert path(4).min_degree == 1
    assert make_family("cycle", 7).n == 7
    with pytest.raises(GraphError):
        make_family("nope")


@pytest.mark.parametrize("kind,dims,n,m,deg", [
    (LatticeKind.SQ, (5, 5), 25, 50, 4),
    (LatticeKind.KING, (6, 6), 36, 144, 8),
    (LatticeKind.HEX, (6, 6), 36, 54, 3),
    (LatticeKind.TRI, (5, 5), 25, 75, 6),
])
def test_tori(kind, dims, n, m, deg):
    G = make_torus(kind, *dims)
    assert (G.n, G.m, G.min_degree, G.max_degree) == (n, m, deg, deg)


def test_torus_too_small():
    with pytest.raises(GraphError):
        make_torus(LatticeKind.SQ, 2, 5)
    with pytest.raises(GraphError):
        make_torus(LatticeKind.HEX, 5, 6)


def test_dot(P):
    dot = to_dot(cycle(3), [0])
    assert dot.count("filled") == 1 and '0 [label="0", style=filled' in dot
    dot = to_dot(P, [])
    assert dot.count("filled") == 0 and dot.count("--") == 15
    G, S = parse_dot(to_dot(P, [1, 2]))
    assert G == P and S == {1, 2}


def test_edge_list_parse_errors():
    with pytest.raises(GraphError, match="header"):
        parse_edge_list("3\n0 1\n")
    with pytest.raises(GraphError, match="declares"):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphError):
        parse_edge_list("")
    G = parse_edge_list("# comment\n3 2\n0 1 # trailing\n1 2\n")
    assert G.edges() == [(0, 1), (1, 2)]


@given(graphs())
def test_edge_list_roundtrip(G):
    assert parse_edge_list(format_edge_list(G)) == G


@given(graphs(min_n=2))
def test_twins_match_networkx(G):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    expected = sorted((u, v) for u in range(G.n) for v in range(u + 1, G.n)
                      if set(g[u]) == set(g[v]) or set(g[u]) | {u} == set(g[v]) | {v})
    assert find_twins(G) == expected


@given(graphs(min_n=2))
def test_distance_matches_networkx(G):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    lengths = dict(nx.all_pairs_shortest_path_length(g))
    for u in range(G.n):
        for v in range(G.n):
            assert distance(G, u, v) == lengths[u].get(v)


@given(graphs())
def test_close_pairs_are_within_distance_two(G):
    close = set(G.close_pairs)
    for u in range(G.n):
        for v in range(u + 1, G.n):
            d = distance(G, u, v)
            assert ((u, v) in close) == (d is not None and d <= 2)
