import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from chromprob import graphs as G
from _oracles import atlas, brute_spanning_trees, is_claw_free_nx, to_nx


def test_validation():
    with pytest.raises(G.GraphError):
        G.build_graph(3, [(0, 0)])
    with pytest.raises(G.GraphError):
        G.build_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(G.GraphError):
        G.build_graph(3, [(0, 3)])
    with pytest.raises(G.GraphError):
        G.Graph(3, ((1, 0),))


def test_named_sizes():
    assert (G.complete(5).n, G.complete(5).m) == (5, 10)
    assert (G.star(4).n, G.star(4).m) == (5, 4)
    assert G.cycle(5).m == 5 and G.path(4).m == 3
    assert G.complete_bipartite(2, 3).m == 6
    t = G.ternary_tree(1)
    assert (t.n, t.m) == (7, 6) and G.is_bipartite(t) and G.is_connected(t)
    assert G.tree_layer_counts(t) == (5, 2)
    for k in (1, 2, 3):
        t = G.ternary_tree(k)
        assert t.n == 2 ** (2 * k + 1) - 1
        even, odd = G.tree_layer_counts(t)
        assert even == (4 ** (k + 1) - 1) // 3 and odd == 2 * (4 ** k - 1) // 3


def test_figure1():
    g = G.figure1()
    assert (g.n, g.m) == (19, 78)
    assert G.is_claw_free(g) and G.is_connected(g)
    assert G.max_degree(g) == 12


def test_claw():
    assert not G.is_claw_free(G.star(3))
    assert G.find_claw(G.star(3))[0] == 0
    assert G.is_claw_free(G.cycle(5)) and G.is_claw_free(G.complete(6))
    assert not G.is_claw_free(G.complete_bipartite(1, 4))


def test_claw_free_matches_oracle_on_atlas():
    for g in atlas(6):
        assert G.is_claw_free(g) == is_claw_free_nx(g)


def test_components_bipartite_triangles_vs_networkx():
    for g in atlas(6):
        h = to_nx(g)
        assert len(G.connected_components(g)) == nx.number_connected_components(h)
        assert G.is_bipartite(g) == nx.is_bipartite(h)
        assert G.triangle_count(g) == sum(nx.triangles(h).values()) // 3


def test_spanning_trees_known():
    assert G.spanning_tree_count(G.complete(4)) == 16
    assert G.spanning_tree_count(G.cycle(5)) == 5
    assert G.spanning_tree_count(G.ternary_tree(2)) == 1
    assert G.spanning_tree_count(G.edgeless(3)) == 0
    assert G.spanning_tree_count(G.figure1()) == 554337478656


def test_spanning_trees_vs_enumeration():
    for g in atlas(6, connected_only=True):
        assert G.spanning_tree_count(g) == brute_spanning_trees(g)
    for n in range(2, 8):
        assert G.spanning_tree_count(G.complete(n)) == n ** (n - 2)


def test_figure1_subgraph_trees():
    sub = G.figure1().induced_subgraph([0, 1, 2, 12, 13, 3])
    assert G.spanning_tree_count(sub) == brute_spanning_trees(sub)


def test_bareiss():
    assert G.bareiss_determinant([[2, 1], [1, 2]]) == 3
    assert G.bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert G.bareiss_determinant([[1, 2], [2, 4]]) == 0


def test_parse_edge_list():
    g = G.parse_edge_list("# comment\n3 2\n0 1\n1 2  # tail\n")
    assert g == G.path(3)
    assert G.parse_edge_list(g.to_edge_list()) == g
    for bad in ["", "3\n", "3 2\n0 1\n", "3 1\n0 x\n", "3 1\n0 0\n"]:
        with pytest.raises(G.GraphError):
            G.parse_edge_list(bad)


def test_named_graph():
    assert G.named_graph("star", 4) == G.star(4)
    assert G.named_graph("figure1") == G.figure1()
    with pytest.raises(G.GraphError):
        G.named_graph("nope")
    with pytest.raises(G.GraphError):
        G.named_graph("star")


def test_posets():
    chain = G.chain_poset(4)
    assert G.incomparability_graph(chain).m == 0
    assert G.incomparability_graph(G.antichain_poset(4)) == G.complete(4)
    assert G.is_3plus1_free(chain)
    # 3-chain plus one isolated element
    p = G.build_poset(4, [(0, 1), (1, 2)])
    assert not G.is_3plus1_free(p)
    assert not G.is_claw_free(G.incomparability_graph(p))
    assert G.parse_poset("4 2\n0 1\n1 2\n") == p
    with pytest.raises(G.GraphError):
        G.build_poset(2, [(0, 1), (1, 0)])


def test_3plus1_free_incomparability_graphs_are_claw_free():
    # every poset on 5 elements generated by random cover pairs
    import random
    rng = random.Random(3)
    for _ in range(200):
        pairs = [(a, b) for a in range(5) for b in range(a + 1, 5) if rng.random() < 0.3]
        p = G.build_poset(5, pairs)
        if G.is_3plus1_free(p):
            assert G.is_claw_free(G.incomparability_graph(p))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                        .filter(lambda e: e[0] < e[1])))))
def test_induced_subgraph_roundtrip(data):
    n, edges = data
    g = G.build_graph(n, list(edges))
    assert g.induced_subgraph(range(n)) == g
    assert sum(g.degrees()) == 2 * g.m
