import pytest
from hypothesis import given, settings, strategies as st

from poisson_inv.characters import cyclic_induced_character, irreducible, restrict_decomposition
from poisson_inv.combinat import Partition, pad
from poisson_inv.polydiff import ETA, XI, var_index
from poisson_inv.spaces import (
    ModelError,
    SpaceKey,
    SubspaceBasis,
    character,
    check_stability,
    containment,
    decompose,
    generic_rank,
    graded_character,
    inv_space,
    max_order,
    pointed_harmonic,
    pointed_restrict,
    quant_spaces,
    quant_space,
    sc_space,
    space,
)


def dims(kind, n, d, orders):
    return [space(kind, n, d, m).dim for m in orders]


def test_inv_dimension_examples():
    assert dims("inv", 3, 1, range(3)) == [1, 3, 2]
    assert dims("inv", 5, 1, range(6)) == [1, 10, 30, 41, 30, 9]
    assert inv_space(5, 2, 3).dim == 50


def test_sc_dimension_examples():
    assert sc_space(4, 1, 4).dim == 0
    for d in (1, 2):
        assert dims("sc", 3, d, range(3)) == [1, 3, 2]
    assert sc_space(4, 2, 3).dim == 6


def test_quant_dimension_examples():
    assert dims("quant", 2, 1, range(2)) == [1, 1]
    assert dims("quant", 3, 1, range(3)) == [1, 3, 2]
    assert quant_space(4, 1, 4).dim == 1
    assert not containment(quant_space(4, 1, 4), sc_space(4, 1, 4))


@pytest.mark.parametrize("n,d", [(2, 1), (3, 1), (4, 1), (5, 1), (3, 2), (4, 2)])
def test_quant_total_is_factorial(n, d):
    from math import factorial

    assert sum(b.dim for b in quant_spaces(n, d)) == factorial(n)


def test_chain_at_order_eight():
    sc, quant, inv = sc_space(5, 1, 4), quant_space(5, 1, 4), inv_space(5, 1, 4)
    assert containment(sc, quant) and containment(quant, inv)
    assert not containment(inv, quant)
    assert (sc.dim, quant.dim, inv.dim) == (24, 29, 30)
    assert containment(inv, inv)


def test_low_slot_chain_is_equality():
    for m in range(3):
        sc, quant, inv = sc_space(3, 1, m), quant_space(3, 1, m), inv_space(3, 1, m)
        assert sc.same_space(quant) and quant.same_space(inv)


def test_containment_index_mismatch():
    with pytest.raises(ValueError):
        containment(inv_space(3, 1, 1), inv_space(4, 1, 1))
    with pytest.raises(ValueError):
        containment(inv_space(3, 1, 1), inv_space(3, 1, 2))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_harmonic_method_agrees_with_graph(n):
    for m in range(max_order("inv", n, 1) + 1):
        assert inv_space(n, 1, m, "harmonic").same_space(inv_space(n, 1, m, "graph"))


def test_method_validation():
    with pytest.raises(ValueError):
        inv_space(3, 2, 1, "harmonic")
    with pytest.raises(ValueError):
        inv_space(3, 1, 1, "bogus")
    with pytest.raises(ValueError):
        SpaceKey("foo", 3, 1, 1)


def test_order_zero_is_trivial():
    for n in range(2, 6):
        b = inv_space(n, 1, 0)
        assert character(b) == irreducible((n + 1,))
        assert decompose(b) == {Partition((n + 1,)): 1}


def test_order_two_is_wedge_square():
    for n in range(3, 7):
        b = inv_space(n, 1, 1)
        assert b.dim == n * (n - 1) // 2
        assert decompose(b) == {pad((1, 1), n + 1): 1}


def test_quant_character_is_cyclic_induction():
    for n in range(2, 5):
        total = graded_character(quant_spaces(n, 1)).total()
        assert total == cyclic_induced_character(n + 1, 0)


def test_sign_occurs_once_in_order_eight():
    sign = Partition((1,) * 6)
    counts = {m: decompose(inv_space(5, 1, m)).get(sign, 0) for m in range(6)}
    assert counts == {0: 0, 1: 0, 2: 0, 3: 0, 4: 1, 5: 0}


def test_order_four_on_four_dimensional_space():
    mults = decompose(inv_space(4, 2, 2))
    assert {lam.truncate(): c for lam, c in mults.items()} == {(2, 1): 1, (2,): 1, (1, 1, 1, 1): 1}
    assert inv_space(4, 2, 2).dim == 11


@pytest.mark.parametrize("n,m", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_branching_consistency(n, m):
    b = inv_space(n, 1, m)
    assert restrict_decomposition(decompose(b, "n+1")) == decompose(b, "n")


def test_stability_detects_a_non_invariant_span():
    n, d = 2, 1
    mono = [0] * 4
    mono[var_index(d, 1, XI, 1)] = 1
    mono[var_index(d, 2, ETA, 1)] = 1
    b = SubspaceBasis.from_vectors(SpaceKey("inv", n, d, 1), n, d, [{tuple(mono): 1}])
    with pytest.raises(ModelError):
        check_stability(b)


@settings(max_examples=8, deadline=None)
@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=4), st.integers(0, 10**6))
def test_random_stability_checks_pass(n, m, seed):
    check_stability(inv_space(n, 1, min(m, max_order("inv", n, 1))), exhaustive=False, seed=seed)


def test_basis_json_round_trip():
    b = inv_space(4, 1, 2)
    again = SubspaceBasis.from_json(b.to_json())
    assert again.same_space(b) and again.key == b.key


def test_pointed_generic_ranks():
    assert [generic_rank(3, x) for x in range(4)] == [1, 2, 2, 1]
    assert [generic_rank(2, x) for x in range(3)] == [1, 1, 0]


def test_pointed_identity_restriction():
    for m in range(4):
        p = pointed_restrict(4, 1, 4, 0, m)
        assert p.basis.rows == inv_space(4, 1, m).rows
        assert p.order == 2 * m and p.weight == 0


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (4, 3), (5, 3)])
def test_pointed_restriction_matches_harmonic_description(n, k):
    for ell in range(n - k + 1):
        for m in range(ell, ell + 3):
            assert pointed_restrict(n, 1, k, ell, m).dim == pointed_harmonic(k, ell, 2 * m - ell).dim


def test_pointed_errors():
    with pytest.raises(ValueError):
        pointed_restrict(3, 1, 3, 1, 1)
    with pytest.raises(ValueError):
        pointed_harmonic(2, 1, 2)


def test_max_order_bounds_the_nonzero_range():
    for n in range(2, 6):
        top = max_order("inv", n, 1)
        assert inv_space(n, 1, top + 1).dim == 0
    assert max_order("inv", 4, 2) == 3


@pytest.mark.parametrize("n,d", [(3, 1), (4, 1), (4, 2)])
def test_right_normed_basis_spans_all_bracket_trees(n, d):
    from poisson_inv.polydiff import all_poisson_monomials, poisson_symbol

    for m in range(n):
        vectors = [poisson_symbol(P, d).terms for P in all_poisson_monomials(n, m)]
        assert SubspaceBasis.from_vectors(None, n, d, vectors).rows == sc_space(n, d, m).rows
