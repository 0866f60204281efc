from fractions import Fraction as F

import pytest

from chromprob import graphs as G
from chromprob import symfunc as SF
from chromprob.chromatic import chromatic_eval
from chromprob.coloring import Distribution, proper_probability
from _oracles import atlas, grid


def test_csf_examples():
    assert SF.chromatic_symmetric_function(G.complete(2), 3) == SF.SymmetricPolynomial(3, {(1, 1): 2})
    assert SF.chromatic_symmetric_function(G.edgeless(2), 2) == SF.SymmetricPolynomial(2, {(2,): 1, (1, 1): 2})
    assert SF.chromatic_symmetric_function(G.complete(3), 3) == SF.SymmetricPolynomial(3, {(1, 1, 1): 6})


def test_csf_explicit_monomials():
    f = SF.chromatic_symmetric_function(G.complete(2), 3)
    assert f.to_monomials() == {(1, 1, 0): 2, (1, 0, 1): 2, (0, 1, 1): 2}


def test_evaluate_examples():
    f = SF.chromatic_symmetric_function(G.complete(2), 3)
    assert SF.evaluate(f, (F(1, 2), F(1, 2), 0)) == F(1, 2)
    x = SF.chromatic_symmetric_function(G.star(4), 2)
    assert SF.evaluate(x, (F(1, 5), F(4, 5))) == F(260, 3125)
    with pytest.raises(ValueError):
        SF.evaluate(x, (F(1),))
    # pure powers at a basis vector
    e = SF.chromatic_symmetric_function(G.edgeless(3), 2)
    assert SF.evaluate(e, (1, 0)) == e.terms[(3,)]


def test_identity_suite():
    for g in atlas(5):
        for q in (2, 3, 4):
            f = SF.chromatic_symmetric_function(g, q)
            assert SF.evaluate(f, Distribution.uniform(q)) * q ** g.n == chromatic_eval(g, q)
            if q <= 3:
                for p in grid(q, 3):
                    assert SF.evaluate(f, p) == proper_probability(g, p)


def test_identity_q4_grid_sample():
    for g in atlas(5)[::4]:
        f = SF.chromatic_symmetric_function(g, 4)
        for p in list(grid(4, 3))[::2]:
            assert SF.evaluate(f, p) == proper_probability(g, p)


def test_e_basis_examples():
    f1 = SF.SymmetricPolynomial.from_monomials(2, {(2, 0): 1, (1, 1): 4, (0, 2): 1})
    assert SF.elementary_basis(f1) == {(1, 1): 1, (2,): 2}
    assert SF.is_e_positive(f1)
    f2 = SF.SymmetricPolynomial.from_monomials(2, {(2, 0): 1, (0, 2): 1})
    assert SF.elementary_basis(f2) == {(1, 1): 1, (2,): -2}
    assert not SF.is_e_positive(f2)
    k2 = SF.chromatic_symmetric_function(G.complete(2), 3)
    assert SF.elementary_basis(k2) == {(2,): 2}


def test_e_basis_degree_guard():
    f = SF.chromatic_symmetric_function(G.star(3), 2)
    with pytest.raises(SF.IncompleteBasisError):
        SF.elementary_basis(f)


def test_from_monomials_rejects_asymmetric():
    with pytest.raises(ValueError):
        SF.SymmetricPolynomial.from_monomials(2, {(2, 0): 1})


def test_e_k_is_m_1k():
    for q in range(1, 7):
        for k in range(1, q + 1):
            assert SF.elementary_product_in_monomials((k,), q) == SF.elementary(k, q)


def test_round_trip():
    for g in atlas(5)[::2]:
        f = SF.chromatic_symmetric_function(g, g.n)
        assert SF.from_elementary(SF.elementary_basis(f), g.n) == f
    f = SF.schur_function((3, 1), 4)
    assert SF.from_elementary(SF.elementary_basis(f), 4) == f


def test_known_e_positivity():
    # claw is the standard non-e-positive example; paths and cycles are e-positive
    assert not SF.is_e_positive(SF.chromatic_symmetric_function(G.star(3), 4))
    for g in (G.path(4), G.cycle(4), G.complete(4), G.path(5)):
        assert SF.is_e_positive(SF.chromatic_symmetric_function(g, g.n))


def test_schur():
    assert SF.schur_function((5, 1), 2) == SF.SymmetricPolynomial(2, {(5, 1): 1, (4, 2): 1, (3, 3): 1})
    for q in range(1, 5):
        assert SF.schur_function((1,), q) == SF.elementary(1, q)
    for q in range(2, 5):
        assert SF.schur_function((1, 1), q) == SF.elementary(2, q)
    assert SF.schur_function((2, 1), 3).terms == {(2, 1): 1, (1, 1, 1): 2}
    with pytest.raises(ValueError):
        SF.schur_function((1, 1, 1), 2)


def test_schur_monomial_positive():
    for lam in [(2, 2), (3, 1), (2, 1, 1), (4,), (3, 2, 1)]:
        assert all(c > 0 for c in SF.schur_function(lam, 4).terms.values())


def test_s51_not_schur_concave():
    found = SF.schur_concavity_counterexample(SF.schur_function((5, 1), 2), 10)
    assert found is not None
    v, w, fv, fw = found
    from chromprob.simplex import majorizes
    assert majorizes(v, w) and fv > fw


def test_json_roundtrip():
    f = SF.chromatic_symmetric_function(G.path(3), 3)
    assert SF.SymmetricPolynomial.from_json(f.to_json()) == f
    assert f.to_json()["q"] == 3


def test_partitions_and_conjugate():
    assert len(list(SF.partitions(5))) == 7
    assert SF.conjugate((3, 1)) == (2, 1, 1)
    assert SF.dominates((3, 1), (2, 2)) and not SF.dominates((2, 2), (3, 1))
