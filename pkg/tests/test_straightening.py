from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from lagquasimap.combinatorics import SignedSequence, sigma, all_sequences
from lagquasimap.exterior import linear_forms_L
from lagquasimap.hilbert import chain_count_matrix, hilbert_polynomial
from lagquasimap.poset import ResourceLimitError
from lagquasimap.straightening import (
    StraighteningLaw, verify_asl, lagrangian_point, ideal_quadrics, phi_image, row_degrees,
    is_standard, standard_rank_at_points, PolyMatrix,
)


@pytest.fixture(scope="module")
def laws():
    return {dn: StraighteningLaw(*dn, seed=0) for dn in [(0, 2), (1, 2), (0, 3)]}


def test_row_degrees():
    assert row_degrees(0, 3) == [0, 0, 0]
    assert row_degrees(1, 3) == [1, 0, 0]
    assert row_degrees(4, 3) == [2, 1, 1]


def test_lg2_relation(laws):
    L = laws[(0, 2)]
    assert len(L.nonstandard) == 1
    m = L.nonstandard[0]
    assert m[0] == m[1] and m[0][0] != m[0][1]
    assert [L.label(v) for v in m] == [r"p[\bar21,\bar12]^(0)"] * 2
    rhs = {tuple(L.label(v) for v in k): c for k, c in L.rules[m].items()}
    assert rhs == {(r"p[\bar21]^(0)", r"p[\bar12]^(0)"): -1,
                   (r"p[\bar2\bar1]^(0)", r"p[12]^(0)"): 1}


@pytest.mark.parametrize("dn", [(0, 2), (1, 2), (0, 3)])
def test_standard_count_is_hp2(laws, dn):
    L = laws[dn]
    hp = hilbert_polynomial(chain_count_matrix(L.ds))
    assert len(L.standard) == hp(2)


@pytest.mark.parametrize("dn", [(0, 2), (1, 2)])
def test_leading_monomials_are_nonstandard(laws, dn):
    L = laws[dn]
    assert sorted(r.lead for r in L.relations()) == sorted(L.nonstandard)
    for r in L.relations():
        for m in r.terms:
            if m != r.lead:
                assert L.order.greater(r.lead, m)


@pytest.mark.parametrize("dn", [(0, 2), (1, 2), (0, 3)])
def test_verify(laws, dn):
    rep = verify_asl(*dn, law=laws[dn], npoints=8)
    assert rep["passed"], rep["failures"]
    assert rep["lex_condition_poset_order"]


@pytest.mark.parametrize("dn", [(0, 2), (1, 2), (0, 3)])
def test_relations_vanish(laws, dn):
    L = laws[dn]
    for s in range(10):
        val = L.value_at(lagrangian_point(L.n, L.d, seed=100 + s))
        for r in L.relations():
            assert r.evaluate(val) == 0


@pytest.mark.parametrize("dn", [(0, 2), (1, 2)])
def test_standard_monomials_independent(laws, dn):
    L = laws[dn]
    assert standard_rank_at_points(L) == len(L.standard)


def test_term_order_extends_poset():
    for dn in [(0, 2), (1, 2), (2, 2), (0, 3), (1, 3), (0, 4)]:
        from lagquasimap.poset import build_doset
        from lagquasimap.straightening import TermOrder
        ds = build_doset(*dn)
        o = TermOrder(ds)
        for i, j, _ in ds.covers:
            assert o.ext[i] < o.ext[j]


@pytest.mark.parametrize("n,d", [(n, d) for n in (1, 2, 3, 4) for d in (0, 1)])
def test_lagrangian_points(n, d):
    for s in range(3):
        pt = lagrangian_point(n, d, seed=s)
        for t in (Fraction(1, 3), Fraction(7)):
            if all(t != c for c, _ in pt.poles):
                assert all(x == 0 for r in pt.isotropy_defect(t) for x in r)
        v = pt.values()
        for f in linear_forms_L(d, n):
            assert f.evaluate(v) == 0
        for a in all_sequences(n):
            for lv in range(d + 1):
                assert v[(a.entries, lv)] == sigma(a) * v[(a.transpose().entries, lv)]


def test_grassmannian_quadrics_symbolic():
    # a few kernel vectors checked against the symbolic minors
    for d, n in [(0, 2), (1, 2)]:
        rels = ideal_quadrics(d, n, seed=3)
        for r in rels[:3]:
            total = 0
            for (x, y), c in r.terms.items():
                total += c * phi_image(d, n, [x, y])
            assert total == 0


def test_quadrics_vanish_on_random_matrices():
    import random
    rels = ideal_quadrics(1, 2, seed=1)
    rng = random.Random(99)
    for _ in range(5):
        p = PolyMatrix.random(2, 1, rng).plucker()
        for r in rels:
            assert r.evaluate(lambda v: p[v]) == 0


def test_straighten_cubic(laws):
    L = laws[(0, 3)]
    m = (L.nonstandard[0][0], L.nonstandard[0][1], L.nonstandard[-1][0])
    poly = L.straighten(m)
    assert all(is_standard(L.ds, k) for k in poly)
    for s in range(3):
        val = L.value_at(lagrangian_point(3, 0, seed=200 + s))
        lhs = val(m[0]) * val(m[1]) * val(m[2])
        rhs = sum(c * val(k[0]) * val(k[1]) * val(k[2]) for k, c in poly.items())
        assert lhs == rhs


def test_json_and_table_deterministic(laws):
    L = laws[(1, 2)]
    again = StraighteningLaw(1, 2, seed=0)
    assert L.to_json() == again.to_json()
    assert L.table() == again.table()
    assert "=" in L.table()


def test_variable_cap():
    with pytest.raises(ResourceLimitError):
        ideal_quadrics(3, 4, max_variables=50)


def test_verify_largest_supported_case():
    # 140 Plucker variables; the slowest test in the suite
    rep = verify_asl(1, 4, seed=0, npoints=3)
    assert rep["passed"], rep["failures"]
