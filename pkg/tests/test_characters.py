import threading
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from poisson_inv.characters import (
    ClassFunction,
    class_size,
    cycle_type,
    cyclic_induced_character,
    cyclic_induced_multiplicity,
    decompose,
    dimension,
    inner_product,
    irreducible,
    irreducible_character,
    multiplicity,
    regular_character,
    restrict_branch,
    restrict_decomposition,
    trivial_character,
)
from poisson_inv.combinat import PaddingError, Partition, num_syt, pad, partitions, partitions_up_to


@st.composite
def small_partitions(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return draw(st.sampled_from(list(partitions(n))))


def test_character_examples():
    for mu in partitions(5):
        assert irreducible_character((5,), mu) == 1
        assert irreducible_character((1,) * 5, mu) == (-1) ** (5 - len(mu))
    assert irreducible_character((2, 1), (3,)) == -1
    assert irreducible_character((2, 1), (1, 1, 1)) == 2
    with pytest.raises(ValueError):
        irreducible_character((2, 1), (2, 2))


def test_multiplicity_examples():
    assert multiplicity(regular_character(3), (2, 1)) == 2
    assert multiplicity(trivial_character(3), (3,)) == 1
    with pytest.raises(ValueError):
        multiplicity(trivial_character(3), (2, 2))


def test_induced_from_five_cycle():
    mults = decompose(cyclic_induced_character(5, 0))
    assert mults == {(5,): 1, (1, 1, 1, 1, 1): 1, (3, 1, 1): 2, (3, 2): 1, (2, 2, 1): 1}


def test_cyclic_multiplicity_examples():
    for n in range(1, 8):
        assert cyclic_induced_multiplicity(n, 0, ()) == 1
    for n in range(2, 10):
        assert cyclic_induced_multiplicity(n, 0, (1,)) == 0
    assert cyclic_induced_multiplicity(4, 0, (1, 1, 1, 1)) == 1
    with pytest.raises(PaddingError):
        cyclic_induced_multiplicity(3, 0, (2, 2))


def test_orthonormality():
    for N in range(1, 8):
        chars = {lam: irreducible(lam) for lam in partitions(N)}
        for a, x in chars.items():
            for b, y in chars.items():
                assert inner_product(x, y) == (1 if a == b else 0)


def test_tableau_method_agrees():
    for lam in partitions_up_to(4):
        for c in (0, 1):
            for n in range(1, 13):
                if sum(lam) + (lam[0] if lam else 0) > n + 1:
                    continue
                assert cyclic_induced_multiplicity(n, c, lam, "character") == \
                    cyclic_induced_multiplicity(n, c, lam, "tableau")


def test_induced_dimensions():
    for n in range(1, 9):
        N = n + 1
        total = sum(num_syt(lam) * multiplicity(cyclic_induced_character(N, 0), lam) for lam in partitions(N))
        assert total == factorial(n)


def test_lie_dimensions():
    for n in range(1, 9):
        lie = decompose(cyclic_induced_character(n, 1))
        assert sum(c * dimension(lam) for lam, c in lie.items()) == factorial(n - 1)


def test_restrict_branch_examples():
    assert sorted(restrict_branch((2, 1))) == [(1, 1), (2,)]
    assert restrict_branch((4,)) == [(3,)]
    assert restrict_branch((2, 2)) == [(2, 1)]


@given(small_partitions(max_n=7))
def test_branching_matches_restriction(lam):
    # restricting the character to S_{N-1} agrees with the branching rule
    N = sum(lam)
    if N < 2:
        return
    chi = irreducible(lam)
    restricted = ClassFunction(N - 1, {mu: chi(tuple(mu) + (1,)) for mu in partitions(N - 1)})
    assert decompose(restricted) == restrict_decomposition({Partition(lam): 1})


@given(small_partitions(max_n=7))
def test_degree_is_syt_count(lam):
    assert irreducible(lam).degree() == num_syt(lam)


@given(st.permutations(range(6)))
def test_cycle_type_is_partition_of_n(perm):
    assert sum(cycle_type(perm)) == 6


def test_class_sizes_count_permutations():
    from collections import Counter
    from itertools import permutations

    counts = Counter(cycle_type(p) for p in permutations(range(5)))
    assert counts == {mu: class_size(mu) for mu in partitions(5)}


def test_class_function_json_round_trip():
    phi = cyclic_induced_character(6, 1)
    assert ClassFunction.from_json(phi.to_json()) == phi
    assert phi.values[Partition((6,))] == Fraction(1)  # mobius(6)


def test_concurrent_readers():
    expected = {lam: irreducible_character(lam, (2, 2, 1, 1)) for lam in partitions(6)}
    results = []

    def work():
        results.append({lam: irreducible_character(lam, (2, 2, 1, 1)) for lam in partitions(6)})

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)


def test_padding_shapes_for_induction():
    assert pad((1, 1, 1, 1), 5) == (1, 1, 1, 1, 1)
