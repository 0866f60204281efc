import random
from fractions import Fraction

import pytest

from chromprob import chromatic as C
from chromprob import graphs as G
from _oracles import atlas, brute_chromatic


def test_known_polynomials():
    assert C.chromatic_polynomial(G.complete(3)).to_json() == [0, 2, -3, 1]
    # (q-1)^4 + (q-1)
    assert C.chromatic_polynomial(G.cycle(4)).to_json() == [0, -3, 6, -4, 1]
    assert C.chromatic_polynomial(G.edgeless(3)).to_json() == [0, 0, 0, 1]
    assert C.chromatic_polynomial(G.edgeless(0)).to_json() == [1]
    star = C.chromatic_polynomial(G.star(4))
    for q in range(6):
        assert star(q) == q * (q - 1) ** 4


def test_polynomial_vs_brute_force_atlas():
    for g in atlas(6):
        poly = C.chromatic_polynomial(g)
        assert poly.degree == g.n
        for q in range(4):
            assert poly(q) == brute_chromatic(g, q)


def test_eval_matches_polynomial():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randint(1, 9)
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.45]
        g = G.build_graph(n, edges)
        poly = C.chromatic_polynomial(g)
        for q in range(7):
            assert C.chromatic_eval(g, q) == poly(q)


def test_figure1_polynomial_consistent():
    g = G.figure1()
    poly = C.chromatic_polynomial(g)
    for q in range(0, 16):
        assert poly(q) == C.chromatic_eval(g, q)
    assert poly(11) == 0 and poly(12) > 0


def test_stable_partitions():
    assert C.stable_partition_counts(G.path(3)) == [0, 0, 1, 1]
    assert C.stable_partition_counts(G.complete(3)) == [0, 0, 0, 1]


def test_complete_bipartite_fast():
    g = G.complete_bipartite(10, 10)
    assert C.chromatic_eval(g, 2) == 2
    assert C.chromatic_eval(g, 3) > 0


def test_uniform_probability_and_mean():
    assert C.uniform_proper_probability(G.complete(3), 3) == Fraction(2, 9)
    assert C.mean_colors(G.complete(3)) == 3
    assert C.mean_colors(G.complete(2)) == 2
    with pytest.raises(ValueError):
        C.uniform_proper_probability(G.complete(2), 0)


def test_polynomial_arithmetic():
    a = C.UnivariatePolynomial((1, 1))
    b = C.UnivariatePolynomial((-1, 1))
    assert (a * b).to_json() == [-1, 0, 1]
    assert (a - a).degree == -1
    assert str(C.UnivariatePolynomial((0, -3, 6, -4, 1))) == "q^4 -4q^3 +6q^2 -3q"


def test_shameful_dong_small():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 7)
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.5]
        assert C.shameful_ratio_monotone(G.build_graph(n, edges), n)


def test_mcdiarmid_minimal_n():
    n = C.minimal_mcdiarmid_n(3)
    assert n == 10
    assert not C.shameful_ratio_monotone(G.complete_bipartite(n, n), 3)
    assert C.shameful_ratio_monotone(G.complete_bipartite(n - 1, n - 1), 3)
