from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from lagquasimap.combinatorics import (
    SignedSequence, ParseError, DomainError, parse_entries, sequence_to_partition,
    partition_to_sequence, conjugate, is_northeast, sigma, sigma_literal, pi, fiber,
    fiber_components, northeast_representative, all_sequences, admissible_sequences,
    bruhat_leq, strict_partition, perm_sign,
)
from lagquasimap.exterior import weight_of


def S(text):
    return SignedSequence.parse(text)


def test_parse_forms():
    assert S(r"\bar4\bar213").entries == (-4, -2, 1, 3)
    assert S("-4,-2,1,3") == S(r"\bar4\bar213")
    assert S("[-4, -2, 1, 3]") == S(r"\bar4\bar213")
    assert SignedSequence.parse(r"\bar{10},1,2,3,4,5,6,7,8,9").entries[0] == -10


def test_text_round_trip_with_commas():
    s = SignedSequence(tuple(range(1, 11)))
    assert "," in s.to_text()
    assert SignedSequence.parse(s.to_text()) == s
    for a in all_sequences(3):
        assert SignedSequence.parse(a.to_text()) == a


@pytest.mark.parametrize("bad", [r"\bar4\bar4", "xyz", "[1, 1]", r"\bar5\bar213"])
def test_parse_rejects(bad):
    with pytest.raises((ParseError, DomainError)):
        SignedSequence.parse(bad)


def test_partition_extremes():
    # the sequence 1..n is the full square, \bar n..\bar 1 the empty partition
    assert S("1234").partition() == (4, 4, 4, 4)
    assert S(r"\bar4\bar3\bar2\bar1").partition() == ()
    assert partition_to_sequence((), 4) == S(r"\bar4\bar3\bar2\bar1")


def test_transpose_example():
    a = S(r"\bar4\bar213")
    t = a.transpose()
    assert t.partition() == conjugate(a.partition())
    assert t.transpose() == a


@pytest.mark.parametrize("n", range(1, 6))
def test_transpose_involution_and_partitions(n):
    for a in all_sequences(n):
        assert a.transpose().transpose() == a
        lam = a.partition()
        assert partition_to_sequence(lam, n) == a
        assert sequence_to_partition(partition_to_sequence(lam, n)) == lam
        assert a.transpose().partition() == conjugate(lam)
        sym = conjugate(lam) == lam
        assert a.is_admissible() == (a == a.transpose()) == sym


def test_admissible_count():
    for n in range(1, 6):
        assert len(admissible_sequences(n)) == 2 ** n


@pytest.mark.parametrize("n", range(1, 5))
def test_fibers(n):
    seen = set()
    for a in all_sequences(n):
        lo, hi = pi(a)
        if (lo, hi) in seen:
            continue
        seen.add((lo, hi))
        k = len(fiber_components(lo, hi))
        F = fiber(lo, hi)
        assert len(F) == 2 ** k
        assert all(pi(x) == (lo, hi) for x in F)
        ne = [x for x in F if x.is_northeast()]
        sw = [x for x in F if x.is_southwest()]
        assert len(ne) == 1 and len(sw) == 1
        assert ne[0] == northeast_representative(lo, hi)
    # every sequence lies in exactly one fiber
    assert sum(len(fiber(*p)) for p in seen) == len(list(all_sequences(n)))


@pytest.mark.parametrize("n", range(1, 5))
def test_equal_weight_admissible_are_incomparable(n):
    adm = admissible_sequences(n)
    for a, b in combinations(adm, 2):
        if weight_of(a).h == weight_of(b).h:
            assert not bruhat_leq(a, b) and not bruhat_leq(b, a)


def test_sigma_examples():
    assert sigma(S(r"\bar4\bar123")) == 1
    assert sigma(S(r"\bar4\bar3\bar2\bar1")) == 1
    # sorting (eps^c, eps) = (1 3, 2 4) and (phi, phi^c) = (2 4, 1 3) by hand
    assert sigma(S(r"\bar4\bar224")) == perm_sign([1, 3, 2, 4]) * perm_sign([2, 4, 1, 3])


def test_sigma_literal_differs_by_parity():
    for n in range(1, 6):
        for a in all_sequences(n):
            k = len(a.positives())
            assert sigma(a) == sigma_literal(a) * (-1) ** (k * (n - k))


def test_strict_partition():
    assert strict_partition(S(r"\bar21")) == (1,)
    assert strict_partition(S("12")) == (2, 1)
    with pytest.raises(DomainError):
        strict_partition(S(r"\bar22"))


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.sampled_from([x for x in range(-n, n + 1) if x]),
                       min_size=n, max_size=n, unique=True)))
def test_random_round_trip(entries):
    a = SignedSequence(tuple(sorted(entries)))
    assert partition_to_sequence(a.partition(), a.n) == a
    assert SignedSequence.parse(a.to_text()) == a
    assert is_northeast(a.partition()) == a.is_northeast()


def test_parse_entries_tuple():
    assert parse_entries((1, 2)) == (1, 2)
