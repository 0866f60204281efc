import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from chromprob import coloring as P
from chromprob import graphs as G
from chromprob.chromatic import chromatic_eval
from _oracles import atlas, brute_proper, grid


def test_rational_io():
    assert P.parse_rational(" 2/5 ") == F(2, 5)
    assert P.format_rational(F(4, 2)) == "2"
    assert P.format_rational(F(-3, 6)) == "-1/2"
    with pytest.raises(ValueError):
        P.parse_rational("x")


def test_distribution():
    p = P.Distribution.parse("2/5,3/5")
    assert p.q == 2 and str(p) == "2/5,3/5"
    assert P.Distribution.parse("uniform:3") == P.Distribution.uniform(3)
    assert p.power_sum(2) == F(13, 25)
    for bad in ["1/2,1/3", "-1/2,3/2", "uniform:x", ""]:
        with pytest.raises(ValueError):
            P.Distribution.parse(bad)


def test_grid():
    pts = P.distribution_grid(3, 4)
    assert len(pts) == 15
    assert len(P.distribution_grid(3, 4, dedupe=True)) == 4


def test_power_sum_form_small():
    assert P.power_sum_form(G.complete(2)) == P.PowerSumPolynomial({(): 1, (2,): -1})
    k3 = P.power_sum_form(G.complete(3))
    assert k3 == P.PowerSumPolynomial({(): 1, (2,): -3, (3,): 2})
    assert P.power_sum_form(G.edgeless(4)) == P.PowerSumPolynomial.constant(1)


def test_power_sum_form_matches_edge_subsets():
    for g in atlas(6):
        if g.m <= 12:
            assert P.power_sum_form(g) == P.power_sum_form_by_edge_subsets(g)
    g = G.figure1().induced_subgraph([0, 1, 2, 3, 6, 12, 13, 18])
    assert P.power_sum_form(g) == P.power_sum_form_by_edge_subsets(g)


def test_power_sum_json_roundtrip():
    f = P.power_sum_form(G.cycle(5))
    assert P.PowerSumPolynomial.from_json(f.to_json()) == f


def test_star_example():
    g = G.star(4)
    assert P.proper_probability(g, (F(1, 2), F(1, 2))) == F(1, 16)
    assert P.proper_probability(g, (F(1, 5), F(4, 5))) == F(260, 3125)
    assert P.star_closed_form(4, (F(1, 5), F(4, 5))) == F(260, 3125)


def test_star_closed_form_vs_brute():
    for n in range(1, 7):
        for p in grid(3, 5):
            assert P.star_closed_form(n, p) == brute_proper(G.star(n), p)


def test_oracle_equivalence_atlas_q2_q3():
    for g in atlas(5):
        form = P.power_sum_form(g)
        for q in (2, 3):
            for p in grid(q, 3):
                want = brute_proper(g, p)
                assert P.proper_probability(g, p) == want
                assert P.evaluate_power_sum(form, p) == want


def test_uniform_matches_chromatic():
    for g in atlas(5):
        for q in (2, 3, 4):
            assert P.proper_probability(g, P.Distribution.uniform(q)) == F(chromatic_eval(g, q), q ** g.n)


def test_threads_identical():
    g = G.cycle(6)
    p = P.Distribution.parse("1/6,1/3,1/2")
    assert P.proper_probability(g, p, threads=3) == P.proper_probability(g, p)


def test_census_totals():
    g = G.cycle(4)
    c = P.coloring_census(g, 3)
    assert sum(c.values()) == 81
    assert sum(v for (m, _), v in c.items() if m == 0) == chromatic_eval(g, 3)
    with pytest.raises(P.InstanceTooLarge):
        P.coloring_census(G.complete(10), 10, max_states=1000)


def test_birthday():
    assert P.minimal_birthday_n(365) == 23
    u = P.Distribution.uniform(365)
    assert P.birthday_probability(23, u) < F(1, 2) < P.birthday_probability(22, u)
    assert P.birthday_probability(3, (F(1, 2), F(1, 4), F(1, 4))) == F(3, 16)
    assert P.birthday_probability(4, P.Distribution.uniform(3)) == 0


def test_birthday_is_complete_graph():
    for n in range(1, 5):
        for p in grid(3, 4):
            assert P.birthday_probability(n, p) == brute_proper(G.complete(n), p)


def test_ternary_tree_closed_form():
    assert P.ternary_tree_closed_form(1, F(1, 2)) == F(1, 64)
    for p1 in (F(1, 3), F(2, 5)):
        assert P.ternary_tree_closed_form(1, p1) == brute_proper(G.ternary_tree(1), (p1, 1 - p1))
        assert P.ternary_tree_closed_form(2, p1) == P.proper_probability(G.ternary_tree(2), (p1, 1 - p1))


def test_float_evaluator():
    f = P.power_sum_form(G.cycle(5))
    p = (F(1, 5), F(3, 10), F(1, 2))
    assert abs(f.float_evaluator()([float(x) for x in p]) - float(P.evaluate_power_sum(f, p))) < 1e-14


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 15 - 1), st.integers(2, 4), st.integers(0, 10 ** 6))
def test_property_proper_probability(n, mask, q, seed):
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    g = G.build_graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
    rng = random.Random(seed)
    den = rng.randint(q, 12)
    cuts = sorted(rng.randint(0, den) for _ in range(q - 1))
    vals = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    p = tuple(F(v, den) for v in vals)
    want = brute_proper(g, p)
    assert P.proper_probability(g, p) == want
    assert P.evaluate_power_sum(P.power_sum_form(g), p) == want
