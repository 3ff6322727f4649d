from fractions import Fraction
from math import factorial

import pytest

from lagquasimap.hilbert import (
    barbell, diamond, chain_count_matrix, chain_count_dp, enumerate_chains, hilbert_polynomial,
    proj_degree, proj_dimension, weighted_maximal_chain_count, standard_monomials, binomial_poly,
    HilbertPolynomial, _matrix_from_chains,
)
from lagquasimap.poset import build_doset

BUILT = [(0, 2), (1, 2), (2, 2), (0, 3), (1, 3)]
DEGREES = {(0, 2): 2, (1, 2): 8, (2, 2): 32, (0, 3): 16, (1, 3): 384}


def _all():
    yield barbell()
    yield diamond()
    for d, n in BUILT:
        yield build_doset(d, n)


def test_barbell():
    ds = barbell()
    assert len(enumerate_chains(ds)) == 8
    c = chain_count_matrix(ds)
    assert c.by_v() == [[1, 2, 1], [1, 2, 1]]
    hp = hilbert_polynomial(c)
    assert str(hp) == "2w + 1"
    assert proj_dimension(c) == 1 and proj_degree(c) == 2


def test_diamond_computed():
    c = chain_count_matrix(diamond())
    assert c.by_v() == [[1, 4, 5, 2], [2, 6, 6, 2]]
    hp = hilbert_polynomial(c)
    assert str(hp) == "2w^2 + 3w + 1"
    assert proj_dimension(c) == 2 and proj_degree(c) == 4


def test_diamond_chain_list_contains_alpha_gamma_then_gamma_then_delta():
    ds = diamond()
    a, b, g, d = range(4)
    assert ((a, g), (g, g), (d, d)) in enumerate_chains(ds)


@pytest.mark.parametrize("make", [barbell, diamond])
def test_fixture_hp_counts_standard_monomials(make):
    ds = make()
    hp = hilbert_polynomial(chain_count_matrix(ds))
    for w in range(1, 5):
        assert hp(w) == len(standard_monomials(ds, w))


@pytest.mark.parametrize("ds", list(_all()), ids=lambda ds: ds.name)
def test_degree_and_leading_coefficient(ds):
    c = chain_count_matrix(ds)
    hp = hilbert_polynomial(c)
    assert hp.degree == c.P
    assert hp.leading() * factorial(c.P) == proj_degree(c)
    assert weighted_maximal_chain_count(ds, ds.minimum()) == proj_degree(c)


@pytest.mark.parametrize("dn", BUILT)
def test_known_degrees(dn):
    assert proj_degree(chain_count_matrix(build_doset(*dn))) == DEGREES[dn]


@pytest.mark.parametrize("dn", [(0, 2), (1, 2), (0, 3)])
def test_enumeration_agrees_with_dp(dn):
    ds = build_doset(*dn)
    c = chain_count_matrix(ds, method="dp")
    assert _matrix_from_chains(enumerate_chains(ds), c.P, c.D) == c.c


@pytest.mark.parametrize("dn,wmax", [((0, 2), 4), ((0, 3), 3)])
def test_hp_counts_standard_monomials(dn, wmax):
    ds = build_doset(*dn)
    hp = hilbert_polynomial(chain_count_matrix(ds))
    for w in range(1, wmax + 1):
        assert hp(w) == len(standard_monomials(ds, w))


def test_lg2():
    c = chain_count_matrix(build_doset(0, 2))
    assert (c.P, c.D) == (3, 4)
    assert proj_degree(c) == 2


def test_binomial_poly():
    p = HilbertPolynomial(binomial_poly(1, 2))
    assert [p(w) for w in range(1, 6)] == [0, 0, 1, 3, 6]


def test_printing():
    assert str(HilbertPolynomial([Fraction(1, 2), 0, -3])) == "-3w^2 + (1/2)"
    assert str(HilbertPolynomial([])) == "0"
