import random
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degree_lab.multiset import (
    EMPTY,
    EQUAL,
    GREATER,
    INCOMPARABLE,
    LESS,
    MeasureComparator,
    Multiset,
    PartialOrdering,
    compare,
    from_json,
    k_times,
    multiset_compare,
    natural_compare,
    pointwise_compare,
    pretty,
    to_json,
)

from .nested import random_a, random_pair
from .oracles import closure_greater, oracle_compare

small = st.lists(st.integers(0, 4), max_size=5).map(Multiset)


def test_basic_operations():
    m = Multiset([1, 2, 2])
    assert len(m) == 3 and m.count(2) == 2 and 1 in m and 3 not in m
    assert m + Multiset([3]) == Multiset([3, 2, 1, 2])
    assert m - Multiset([2, 5]) == Multiset([1, 2])
    assert m.elements() == [1, 2, 2]
    assert Multiset.from_counts([(7, 2), (8, 0)]) == Multiset([7, 7])
    with pytest.raises(ValueError):
        Multiset.from_counts([(1, -1)])
    with pytest.raises(AttributeError):
        m.foo = 1


def test_hash_is_order_independent():
    assert hash(Multiset([1, 2, 3])) == hash(Multiset([3, 1, 2]))
    assert {Multiset([1, 2]): "a"}[Multiset([2, 1])] == "a"


def test_k_times():
    assert k_times(0, Multiset([1, 2])) == EMPTY
    m = Multiset([4, 1])
    assert k_times(1, m) == m
    assert k_times(3, Multiset([5])) == Multiset([5, 5, 5])
    with pytest.raises(ValueError):
        k_times(-1, m)


@given(st.integers(0, 4), small)
def test_k_times_recursion(k, m):
    assert k_times(k + 1, m) == m + k_times(k, m)


def test_dershowitz_manna_examples():
    assert multiset_compare(Multiset([2]), Multiset([1, 1, 1])) is GREATER
    assert multiset_compare(EMPTY, EMPTY) is EQUAL
    m = Multiset([3, 0])
    assert multiset_compare(m + Multiset([1]), m) is GREATER
    assert multiset_compare(m, m + Multiset([1])) is LESS
    assert multiset_compare(Multiset([2, 2]), Multiset([3])) is LESS


def test_partial_element_order_gives_incomparable():
    def divides(a, b):
        if a == b:
            return EQUAL
        if a % b == 0:
            return GREATER
        if b % a == 0:
            return LESS
        return INCOMPARABLE

    assert multiset_compare(Multiset([6]), Multiset([2, 3]), divides) is GREATER
    assert multiset_compare(Multiset([2]), Multiset([3]), divides) is INCOMPARABLE
    assert multiset_compare(Multiset([4]), Multiset([2, 3]), divides) is INCOMPARABLE


def test_partial_element_order_matches_closure_oracle():
    def gt(a, b):
        return a != b and a % b == 0

    def divides(a, b):
        return EQUAL if a == b else GREATER if gt(a, b) else LESS if gt(b, a) else INCOMPARABLE

    values = [2, 3, 4, 6, 12]
    pool = [Multiset(c) for k in range(4) for c in combinations_with_replacement(values, k)]
    for m in pool:
        for n in pool:
            got = multiset_compare(m, n, divides)
            if m == n:
                assert got is EQUAL
            elif closure_greater(m.elements(), n.elements(), gt):
                assert got is GREATER, (m, n)
            elif closure_greater(n.elements(), m.elements(), gt):
                assert got is LESS, (m, n)
            else:
                assert got is INCOMPARABLE, (m, n)


def test_lexicographic_pairs():
    cmp = MeasureComparator()
    assert cmp((2, EMPTY), (1, Multiset([EMPTY] * 9))) is GREATER
    assert cmp((1, Multiset([EMPTY])), (1, EMPTY)) is GREATER
    assert cmp((1, EMPTY), (1, EMPTY)) is EQUAL
    assert cmp(3, (1, EMPTY)) is INCOMPARABLE


def test_pointwise():
    assert pointwise_compare(Multiset([3, 2]), Multiset([2, 1]))
    assert pointwise_compare(EMPTY, EMPTY)
    assert not pointwise_compare(Multiset([3, 1]), Multiset([2, 2]))
    assert not pointwise_compare(Multiset([3]), Multiset([2, 1]))
    # needs a non-greedy matching
    assert pointwise_compare(Multiset([5, 2]), Multiset([1, 4]))


@given(small, small)
def test_pointwise_implies_greater(m, n):
    if m and pointwise_compare(m, n):
        assert multiset_compare(m, n) is GREATER


@given(small, small, small)
def test_strict_partial_order(a, b, c):
    assert compare(a, a) is EQUAL
    assert compare(a, b) is compare(b, a).reverse()
    if compare(a, b) is GREATER and compare(b, c) is GREATER:
        assert compare(a, c) is GREATER


@settings(max_examples=200)
@given(st.lists(st.integers(0, 3), max_size=5), st.lists(st.integers(0, 3), max_size=5))
def test_flat_agrees_with_oracle(xs, ys):
    m, n = Multiset(xs), Multiset(ys)
    assert compare(m, n).value == oracle_compare(m, n)


def test_nested_agrees_with_oracle_sample():
    rng = random.Random(7)
    for _ in range(200):
        a, b = random_pair(rng)
        assert compare(a, b).value == oracle_compare(a, b)


def test_comparator_memo_is_consistent():
    rng = random.Random(3)
    cmp = MeasureComparator()
    pairs = [random_pair(rng) for _ in range(50)]
    first = [cmp(a, b) for a, b in pairs]
    assert [cmp(a, b) for a, b in pairs] == first
    assert first == [compare(a, b) for a, b in pairs]


def test_json_round_trip():
    rng = random.Random(11)
    for _ in range(100):
        a = random_a(rng, 4)
        data = to_json(a)
        assert from_json(data, "A") == a
        assert to_json(from_json(data, "A")) == data


def test_json_is_canonical():
    a = Multiset([(2, Multiset([EMPTY, Multiset([(1, EMPTY)])])), (1, EMPTY)])
    b = Multiset([(1, EMPTY), (2, Multiset([Multiset([(1, EMPTY)]), EMPTY]))])
    assert to_json(a) == to_json(b) == [[1, []], [2, [[], [[1, []]]]]]


def test_pretty():
    b = Multiset([EMPTY] * 5)
    assert pretty(Multiset([(1, b), (1, b)])) == "[(1, [[]^5])^2]"
    assert pretty(EMPTY) == "[]"


def test_partial_ordering_helpers():
    assert PartialOrdering.LESS.reverse() is GREATER
    assert INCOMPARABLE.reverse() is INCOMPARABLE
    assert GREATER.is_ge and EQUAL.is_ge and not LESS.is_ge
    assert LESS.is_le and not INCOMPARABLE.is_le
    assert natural_compare(3, 1) is GREATER
