from itertools import product

import pytest

from lagquasimap.combinatorics import SignedSequence, DomainError, bruhat_leq
from lagquasimap.poset import (
    PosetElement, leq, meet, join, covers, build_doset, is_admissible_pair, hasse_dot,
    DosetStructure, ResourceLimitError, poset_elements, embed, unembed,
    SAME_LEVEL_DOSET, LEVEL_JUMP,
)

SMALL = [(d, n) for n in (1, 2, 3) for d in (0, 1, 2)]


def _brute_covers(els):
    out = set()
    for i, x in enumerate(els):
        for j, y in enumerate(els):
            if i != j and leq(x, y) and not any(
                    k not in (i, j) and leq(x, z) and leq(z, y) for k, z in enumerate(els)):
                out.add((i, j))
    return out


@pytest.mark.parametrize("d,n", [(d, n) for n in range(1, 5) for d in range(4)])
def test_size(d, n):
    assert len(poset_elements(d, n)) == (d + 1) * 2 ** n


@pytest.mark.parametrize("d,n", SMALL + [(1, 4)])
def test_covers_match_brute_force(d, n):
    ds = build_doset(d, n)
    assert {(i, j) for i, j, _ in ds.covers} == _brute_covers(ds.elements)


@pytest.mark.parametrize("d,n", SMALL)
def test_lattice(d, n):
    els = poset_elements(d, n)
    for x, y in product(els, repeat=2):
        m, j = meet(x, y), join(x, y)
        lower = [z for z in els if leq(z, x) and leq(z, y)]
        upper = [z for z in els if leq(x, z) and leq(y, z)]
        assert m in lower and all(leq(z, m) for z in lower)
        assert j in upper and all(leq(j, z) for z in upper)
    for x, y, z in product(els, repeat=3):
        assert meet(x, join(y, z)) == join(meet(x, y), meet(x, z))


def test_embedding_round_trip():
    for x in poset_elements(3, 3):
        assert unembed(embed(x), 3) == x


@pytest.mark.parametrize("d,n", SMALL)
def test_doset_axiom(d, n):
    ds = build_doset(d, n)
    N = len(ds)
    D = set(ds.pairs) | {(i, i) for i in range(N)}
    for a in range(N):
        for b in range(N):
            if not ds.order[a][b]:
                continue
            for c in range(N):
                if ds.order[b][c]:
                    assert ((a, c) in D) == ((a, b) in D and (b, c) in D)


@pytest.mark.parametrize("d,n", SMALL)
def test_pairs_type1_vs_durfee(d, n):
    ds = build_doset(d, n)
    els = ds.elements
    for i, j in product(range(len(ds)), repeat=2):
        if i != j:
            assert ((i, j) in ds.pairs) == is_admissible_pair(els[i], els[j])


@pytest.mark.parametrize("d,n", SMALL)
def test_poset_is_ranked(d, n):
    ds = build_doset(d, n)
    assert ds.poset_rank() == n * (n + 1) // 2 + d * (n + 1)


@pytest.mark.parametrize("d,n", SMALL)
def test_doset_longest_chain(d, n):
    ds = build_doset(d, n)
    assert max(ds.doset_chain_lengths()) == ds.doset_rank()


def test_doset_maximal_chains_not_all_equal():
    # maximal chains of the doset order of D_{0,3} have lengths 7 and 9
    ds = build_doset(0, 3)
    assert ds.doset_chain_lengths() == {7, 9}
    assert build_doset(0, 2).doset_chain_lengths() == {4}


def test_bruhat_at_level_zero():
    for n in (2, 3, 4):
        ds = build_doset(0, n)
        seqs = [e.seq for e in ds.elements]
        brute = set()
        for i, a in enumerate(seqs):
            for j, b in enumerate(seqs):
                if i != j and bruhat_leq(a, b) and not any(
                        k not in (i, j) and bruhat_leq(a, c) and bruhat_leq(c, b)
                        for k, c in enumerate(seqs)):
                    brute.add((i, j))
        assert brute == {(i, j) for i, j, _ in ds.covers}


def test_d02_structure():
    ds = build_doset(0, 2)
    assert len(ds) == 4
    assert len(ds.pairs) == 1
    (i, j), = ds.pairs
    assert str(ds.elements[i].seq) == r"\bar21" and str(ds.elements[j].seq) == r"\bar12"


@pytest.mark.parametrize("d,n", [(d, n) for n in range(1, 5) for d in range(4)])
def test_at_most_one_level_jump(d, n):
    for x in poset_elements(d, n):
        assert sum(1 for _, t in covers(x, d) if t == LEVEL_JUMP) <= 1


def test_json_round_trip():
    ds = build_doset(1, 3)
    ds2 = DosetStructure.from_json(ds.dumps())
    assert ds2.elements == ds.elements and ds2.pairs == ds.pairs
    assert ds2.dumps() == ds.dumps()


def test_hasse_dot_deterministic():
    a = hasse_dot(build_doset(1, 2))
    assert a == hasse_dot(build_doset(1, 2))
    assert a.startswith("digraph")
    assert a.count("black:invis:black") == sum(
        1 for *_, t in build_doset(1, 2).covers if t == SAME_LEVEL_DOSET)


def test_caps_and_domain():
    with pytest.raises(ResourceLimitError):
        build_doset(3, 10, max_elements=100)
    with pytest.raises(DomainError):
        build_doset(-1, 2)
    with pytest.raises(DomainError):
        PosetElement(-1, SignedSequence((1,)))
