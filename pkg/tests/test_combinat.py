from collections import Counter
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from poisson_inv.combinat import (
    PaddingError,
    Partition,
    count_syt_by_major_mod,
    evaluate_poly,
    hook_lengths,
    maj_generating_function,
    num_syt,
    pad,
    pad_exists,
    parse_partition,
    partitions,
    serialize_partition,
    standard_tableaux,
    syt_q_series,
)


@st.composite
def partition_strategy(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    k = draw(st.integers(min_value=1, max_value=n))
    bins = draw(st.lists(st.integers(min_value=0, max_value=k - 1), min_size=n, max_size=n))
    return Partition(sorted(Counter(bins).values(), reverse=True))


def test_partition_validation():
    assert Partition((3, 1, 0)) == (3, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_partition_counts():
    assert [len(list(partitions(n))) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert list(partitions(3)) == [(3,), (2, 1), (1, 1, 1)]


def test_hooks_and_syt():
    assert sorted(hook_lengths((2, 2)), reverse=True) == [3, 2, 2, 1]
    assert num_syt((3, 2)) == 5
    assert num_syt(()) == 1
    assert len(list(standard_tableaux((3, 2)))) == 5


def test_padding():
    assert pad((2, 1), 7) == (4, 2, 1)
    assert pad((), 3) == (3,)
    assert pad((2, 2), 6) == (2, 2, 2)
    with pytest.raises(PaddingError):
        pad((2, 2), 5)
    assert not pad_exists((2, 2), 5)
    assert pad((2, 1), 7).truncate() == (2, 1)


def test_serialization_round_trip():
    assert serialize_partition(()) == "-"
    assert serialize_partition((2, 1, 1)) == "2,1,1"
    assert parse_partition("-") == ()
    assert parse_partition("3,1") == (3, 1)


def test_major_index_examples():
    majs = sorted(T.major_index() for T in standard_tableaux((2, 1)))
    assert majs == [1, 2]
    assert maj_generating_function((2, 1)) == [0, 1, 1]
    assert syt_q_series((2, 1)) == [0, 1, 1]
    assert syt_q_series((2, 2)) == [0, 0, 1, 0, 1]
    assert syt_q_series((3,)) == [1]
    assert syt_q_series((1, 1, 1)) == [0, 0, 0, 1]


@given(partition_strategy())
def test_conjugate_is_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(partition_strategy())
def test_hook_multiset_matches_conjugate(lam):
    assert sorted(hook_lengths(lam)) == sorted(hook_lengths(lam.conjugate()))


@given(partition_strategy(max_n=7))
def test_hook_formula_counts_tableaux(lam):
    assert num_syt(lam) == sum(1 for _ in standard_tableaux(lam))


@given(partition_strategy(max_n=7))
def test_maj_recursion_matches_enumeration(lam):
    counts = Counter(T.major_index() for T in standard_tableaux(lam))
    coeffs = maj_generating_function(lam)
    assert {e: c for e, c in enumerate(coeffs) if c} == dict(counts)


@settings(max_examples=40)
@given(partition_strategy())
def test_closed_form_matches_maj(lam):
    assert syt_q_series(lam) == maj_generating_function(lam)
    assert evaluate_poly(syt_q_series(lam), 1) == num_syt(lam)


@given(partition_strategy(), st.integers(min_value=1, max_value=9))
def test_residues_sum_to_syt_count(lam, modulus):
    total = sum(count_syt_by_major_mod(lam, modulus, r) for r in range(modulus))
    assert total == num_syt(lam)


def test_sum_of_squares_is_factorial():
    for n in range(1, 8):
        assert sum(num_syt(lam) ** 2 for lam in partitions(n)) == factorial(n)
