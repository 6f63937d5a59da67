import pytest
from hypothesis import given, settings, strategies as st

from excellent_ktrees.graph import (
    GraphError,
    are_isomorphic,
    build_graph,
    complete_graph,
    cycle_graph,
    delete_vertices,
    enumerate_triangles,
    path_graph,
    permute,
)

import brute


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


def test_build_k3(k3):
    assert k3.n == 3
    assert k3.edges() == [(0, 1), (0, 2), (1, 2)]


def test_build_c6(c6):
    assert c6.m == 6
    assert all(c6.degree(v) == 2 for v in range(6))


def test_build_k1():
    g = build_graph(1, [])
    assert g.n == 1 and g.m == 0


def test_duplicate_edges_collapse():
    g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.edges() == [(0, 1)]


@pytest.mark.parametrize("edges", [[(0, 3)], [(-1, 0)]])
def test_out_of_range_rejected(edges):
    with pytest.raises(GraphError, match="outside"):
        build_graph(3, edges)


def test_self_loop_rejected():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph(3, [(1, 1)])


@given(graphs())
def test_invariants_and_edge_roundtrip(g):
    for v in range(g.n):
        assert v not in g.adjacency[v]
        for u in g.adjacency[v]:
            assert v in g.adjacency[u] and 0 <= u < g.n
    assert build_graph(g.n, g.edges()) == g


def test_triangles_examples(k3, c6, dia):
    assert enumerate_triangles(k3) == [(0, 1, 2)]
    assert enumerate_triangles(c6) == []
    assert enumerate_triangles(dia) == [(0, 1, 2), (0, 1, 3)]


@given(graphs())
def test_triangles_match_brute_force(g):
    assert enumerate_triangles(g) == brute.triangles(g)


def test_delete_examples(k3, c6, dia):
    g, _ = delete_vertices(k3, {2})
    assert g == complete_graph(2)
    g, _ = delete_vertices(c6, {0})
    assert are_isomorphic(g, path_graph(5))
    g, relabel = delete_vertices(dia, {0})
    assert relabel == {1: 0, 2: 1, 3: 2}
    # path 2-1-3 in old ids
    assert g.edges() == [(0, 1), (0, 2)]


def test_delete_out_of_range(k3):
    with pytest.raises(GraphError):
        delete_vertices(k3, {5})


@given(graphs())
def test_delete_nothing_is_identity(g):
    h, relabel = delete_vertices(g, set())
    assert h == g and relabel == {v: v for v in range(g.n)}


def test_isomorphism_examples(c6, k3, dia):
    assert are_isomorphic(c6, permute(c6, [3, 5, 0, 2, 1, 4]))
    assert not are_isomorphic(k3, path_graph(3))
    assert not are_isomorphic(dia, complete_graph(4))


def test_isomorphism_regular_non_isomorphic():
    # two triangles vs C6: same degree sequence, refinement cannot split them
    two_k3 = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not are_isomorphic(two_k3, cycle_graph(6))


def test_isomorphism_order_cap():
    with pytest.raises(GraphError, match="refused"):
        are_isomorphic(cycle_graph(13), cycle_graph(13))


@settings(max_examples=60)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_isomorphic_to_any_relabeling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert are_isomorphic(g, permute(g, perm))


@settings(max_examples=80)
@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_agrees_with_networkx(g, h):
    nx = pytest.importorskip("networkx")
    a = nx.Graph()
    a.add_nodes_from(range(g.n))
    a.add_edges_from(g.edges())
    b = nx.Graph()
    b.add_nodes_from(range(h.n))
    b.add_edges_from(h.edges())
    assert are_isomorphic(g, h) == nx.is_isomorphic(a, b)
