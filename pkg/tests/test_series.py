from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from poisson_inv.characters import cyclic_induced_multiplicity
from poisson_inv.combinat import Partition, num_syt, partitions
from poisson_inv.series import (
    CLOSED_FORMS,
    DIM_POLYNOMIALS,
    MultiplicityTable,
    RationalSeries,
    build_table,
    closed_form,
    closed_form_info,
    dim_polynomial,
    expand,
    height_three_multiplicity,
    isotypic_pattern,
    kappa,
    kw_series,
    lie_series,
    numerator_from_table,
    poisson_character_product,
    poisson_dimension,
    poisson_multiplicities,
    verify_table,
    whitehouse_series,
)
from poisson_inv.spaces import decompose, sc_space


@st.composite
def rational_series(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-3, 3), max_size=4))
    den = draw(st.lists(st.tuples(st.sampled_from(["t", "u"]), st.integers(1, 4)), max_size=3))
    return RationalSeries(terms, tuple(den))


def test_expand_examples():
    geometric = RationalSeries({(0, 0): 1}, (("t", 1),))
    assert expand(geometric, 6, 0) == {(0, n): 1 for n in range(7)}
    one = closed_form("I-1")
    assert expand(one, 4, 4)[(1, 2)] == 1
    assert expand(closed_form("I+-21"), 6, 4)[(2, 4)] == 1
    with pytest.raises(ValueError):
        RationalSeries({}, (("x", 1),))


@given(rational_series())
def test_expansion_times_denominator_gives_numerator(r):
    # multiplying back by every (1 - var^h) recovers the truncated numerator
    t_order, s_order = 10, 10
    table = expand(r, t_order, s_order)
    for var, h in r.denominator:
        step = (h, h) if var == "u" else (0, h)
        table = {(m, n): table.get((m, n), 0) - table.get((m - step[0], n - step[1]), 0)
                 for m in range(s_order + 1) for n in range(t_order + 1)}
    expected = {}
    for (a, b), c in r.numerator.items():
        if a <= s_order and a + b <= t_order:
            expected[(a, a + b)] = expected.get((a, a + b), 0) + c
    assert {k: v for k, v in table.items() if v} == {k: v for k, v in expected.items() if v}


def test_closed_form_library():
    assert str(closed_form("I+-2")) == "(u^2*t)/((1-t)(1-u^2))"
    assert str(closed_form("I+-empty")) == "(1)/((1-t))"
    assert closed_form_info("wedge4-cyclic").group == "kw"
    with pytest.raises(KeyError):
        closed_form("nope")
    assert closed_form_info("I+-1111-c2").applies(1)
    assert not closed_form_info("I+-1111-c2").applies(2)
    assert closed_form_info("I+-1111-v").applies(3)
    for info in CLOSED_FORMS.values():
        assert info.group in ("n", "n+1", "kw")


def test_wedge4_series_matches_cyclic_induction():
    coeffs = expand(closed_form("wedge4-cyclic"), 30, 0)
    for n in range(5, 31):
        assert coeffs.get((0, n), 0) == cyclic_induced_multiplicity(n, 0, (1, 1, 1, 1))


def test_table_and_verification_report():
    table = build_table("inv", 1, [(n, m) for n in range(2, 6) for m in range(0, 5)])
    assert table.get((1,), 3, 1, "n+1") == 0
    assert table.get((1, 1), 3, 1, "n+1") == 1
    assert table.get((2, 2), 3, 2, "n+1") is None  # (2,2)[4] is undefined
    assert table.get((2, 2), 4, 2, "n+1") is None
    assert table.get((1, 1), 5, 3, "n+1") == 1
    assert table.get((1,), 9, 1, "n+1") is None  # never computed
    report = verify_table(closed_form("I+-11"), table, (1, 1), (5, 4), series_id="I+-11")
    assert report["status"] == "pass" and report["checked"] > 0
    assert set(report) == {"id", "lambda", "group", "window", "checked", "mismatches", "status"}
    assert verify_table(closed_form("I+-1"), table, (1,), (5, 4))["status"] == "pass"
    bad = verify_table(closed_form("I+-2"), table, (1, 1), (5, 4))
    assert bad["status"] == "fail" and {"n", "m", "expected", "got"} <= set(bad["mismatches"][0])
    empty = MultiplicityTable()
    assert verify_table(closed_form("I+-11"), empty, (1, 1), (5, 4))["status"] == "no-data"
    num = numerator_from_table(table, (1, 1), "n+1", (5, 4))
    assert num == {(1, 2): 1}


def test_table_rejects_bad_entries():
    table = MultiplicityTable()
    with pytest.raises(ValueError):
        table.record(3, 1, "n+1", {(2, 1): 1})
    with pytest.raises(ValueError):
        table.record(3, 1, "n+1", {(2, 1, 1): Fraction(1, 2)})


def test_isotypic_patterns():
    # wedge^2 h occurs in orders 2, 6, 10, ...
    assert [isotypic_pattern((1, 1), 8, m) for m in range(7)] == [0, 1, 0, 1, 0, 1, 0]
    assert isotypic_pattern((), 5, 0) == 1 and isotypic_pattern((), 5, 1) == 0
    assert isotypic_pattern((1,), 5, 2) == 0


def test_height_three_rows():
    assert height_three_multiplicity((2, 1), 5, 2) == 1  # floor((2m - 1)/3) at m = 2


def test_kw_examples():
    s = kw_series((1, 1, 1, 1), 0, 40)
    assert s.numerator[:10] == [1, 0, 1, 1, 0, 3, 0, 0, 0, 0] and s.fit_ok
    assert all(v == 0 for v in kw_series((1,), 0, 20).coefficients.values())
    two = kw_series((2,), 0, 30)
    assert two.value_at_one == 1 and two.fit_ok
    with pytest.raises(ValueError):
        kw_series((), 0, 10)


@pytest.mark.parametrize("lam", [lam for k in range(2, 5) for lam in partitions(k)])
@pytest.mark.parametrize("c", [0, 1])
def test_kw_fit(lam, c):
    s = kw_series(lam, c, 40)
    assert s.polynomial and s.value_at_one == factorial(sum(lam) - 1)


def test_kw_methods_agree():
    assert kw_series((2, 1), 1, 14).coefficients == kw_series((2, 1), 1, 14, "tableau").coefficients


def test_lie_and_kappa():
    assert kappa((2,)) == [0, 1] and kappa((1, 1)) == [0, 1]
    assert kappa((1,)) == [1]
    assert kappa((2,), plus=True) == [1]
    assert kappa((1, 1), plus=True) == [1]
    assert kappa((3,), plus=True) == [0, 0, 0, 1]
    assert kappa((1, 1, 1), plus=True) == [0, 0, 1]
    assert kappa((2, 1), plus=True) == [0, 0, 1]
    assert sum(lie_series((1, 1), 6).values()) > 0


def test_lie_series_matches_top_semiclassical_order():
    for n in range(3, 6):
        mults = decompose(sc_space(n, 1, n - 1), "n")
        for lam in partitions(3):
            if sum(lam) + lam[0] <= n:
                assert mults.get(Partition(lam).pad(n), 0) == lie_series(lam, n)[n]
        mults = decompose(sc_space(n, 1, n - 1), "n+1")
        for lam in partitions(2):
            assert mults.get(Partition(lam).pad(n + 1), 0) == whitehouse_series(lam, n)[n]


def test_dimension_polynomials():
    assert dim_polynomial("inv-c2-order8", 5) == 30
    assert dim_polynomial("inv-v4-order4", 4) == 11
    assert dim_polynomial("inv-c2-order6", 6) == 161
    assert dim_polynomial("inv-order2", 6) == 15
    with pytest.raises(KeyError):
        dim_polynomial("nope", 3)
    assert all(isinstance(dim_polynomial(k, 7), Fraction) for k in DIM_POLYNOMIALS)


def test_poisson_dimensions():
    assert [poisson_dimension(4, m) for m in range(4)] == [1, 6, 11, 6]
    for n in range(1, 7):
        assert sum(poisson_dimension(n, m) for m in range(n)) == factorial(n)
    assert poisson_dimension(4, 3) == factorial(3)


def test_poisson_product_low_slices():
    series = poisson_character_product(4, 5, 5)
    assert poisson_multiplicities(series, 2, 0) == {Partition((2,)): 1}
    assert poisson_multiplicities(series, 2, 1) == {Partition((1, 1)): 1}
    for m in range(4):
        mults = poisson_multiplicities(series, 4, m)
        total = sum(c * num_syt(lam) for lam, c in mults.items())
        assert total == [1, 6, 11, 6][m]


def test_poisson_product_matches_semiclassical_at_three_slots():
    series = poisson_character_product(3, 4, 4)
    for m in range(3):
        assert poisson_multiplicities(series, 3, m) == decompose(sc_space(3, 2, m), "n")


def test_exponent_variants_differ_at_five_slots():
    printed = poisson_character_product(4, 5, 5, variant="d-1")
    composed = poisson_character_product(4, 5, 5, variant="i-i/d")
    sign = Partition((1,) * 5)
    assert poisson_multiplicities(printed, 5, 1)[sign] == Fraction(1, 4)
    assert composed.keys() != printed.keys() or composed != printed
    for m in range(5):
        assert all(isinstance(c, int) for c in poisson_multiplicities(composed, 5, m).values())
    with pytest.raises(ValueError):
        poisson_character_product(2, 2, 2, variant="other")
