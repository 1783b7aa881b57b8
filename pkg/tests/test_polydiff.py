from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from poisson_inv.polydiff import (
    ETA,
    XI,
    Multigraph,
    PoissonMonomial,
    SymbolPoly,
    bivector,
    compose_perms,
    cubic_constraint,
    graph_symbol,
    harmonic_constraints,
    moyal_coefficient,
    poisson_basis,
    poisson_symbol,
    poly_from_json,
    poly_to_json,
    simple_transposition,
    snp1_action,
)


def xi(n, d, i, k=1):
    return SymbolPoly.variable(n, d, i, XI, k)


def eta(n, d, i, k=1):
    return SymbolPoly.variable(n, d, i, ETA, k)


def sign(perm):
    s = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                s = -s
    return s


@st.composite
def symbols(draw, n_max=4, d=1, max_degree=4):
    n = draw(st.integers(min_value=2, max_value=n_max))
    size = 2 * n * d
    terms = {}
    for _ in range(draw(st.integers(min_value=1, max_value=4))):
        degree = draw(st.integers(min_value=0, max_value=max_degree))
        mono = [0] * size
        for _ in range(degree):
            mono[draw(st.integers(min_value=0, max_value=size - 1))] += 1
        terms[tuple(mono)] = draw(st.integers(min_value=-3, max_value=3))
    return SymbolPoly(n, d, terms)


@st.composite
def graphs(draw, n_max=4, max_edges=3):
    n = draw(st.integers(min_value=2, max_value=n_max))
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), min_size=0, max_size=max_edges))
    return Multigraph(n, edges)


def test_bivector_examples():
    p = bivector(1, 2, 1, 2)
    assert p == xi(2, 1, 1) * eta(2, 1, 2) - eta(2, 1, 1) * xi(2, 1, 2)
    assert bivector(2, 1, 1, 2) == -p
    assert len(bivector(1, 2, 2, 2)) == 4
    with pytest.warns(UserWarning):
        assert not bivector(1, 1, 1, 2)
    with pytest.raises(ValueError):
        bivector(1, 3, 1, 2)


def test_graph_symbol_examples():
    assert graph_symbol(Multigraph(2, [(1, 2)]), 1) == bivector(1, 2, 1, 2)
    double = graph_symbol(Multigraph(2, [(1, 2), (1, 2)]), 1)
    assert double == bivector(1, 2, 1, 2) ** 2 and double
    with pytest.raises(ValueError):
        Multigraph(2, [(1, 1)])


@pytest.mark.parametrize("d", [1, 2])
def test_skew_symmetrized_matching_vanishes(d):
    N = 2 * d + 2
    matching = [(2 * a + 1, 2 * a + 2) for a in range(d + 1)]
    total = SymbolPoly.zero(N, d)
    for perm in permutations(range(1, N + 1)):
        G = Multigraph(N, [(perm[a - 1], perm[b - 1]) for a, b in matching])
        total = total + graph_symbol(G, d).scale(sign(perm))
    assert not total


def test_poisson_symbol_examples():
    pi = lambda i, j: bivector(i, j, 1, 3)
    assert poisson_symbol(PoissonMonomial(3, [(1, 2), 3]), 1) == pi(1, 2)
    nested = poisson_symbol(PoissonMonomial(3, [(1, (2, 3))]), 1)
    assert nested == pi(1, 2) * pi(2, 3) + pi(1, 3) * pi(2, 3)
    with pytest.raises(ValueError):
        PoissonMonomial(3, [(1, 2)])


def test_bracket_of_brackets_skew_symmetrizes_to_zero():
    total = SymbolPoly.zero(4, 1)
    for perm in permutations(range(1, 5)):
        a, b, c, e = perm
        total = total + poisson_symbol(PoissonMonomial(4, [((a, b), (c, e))]), 1).scale(sign(perm))
    assert not total
    assert poisson_symbol(PoissonMonomial(4, [((1, 2), (3, 4))]), 1)


def test_poisson_basis_size():
    from math import factorial

    for n in range(1, 6):
        assert sum(1 for _ in poisson_basis(n)) == factorial(n)


def test_moyal_examples():
    assert moyal_coefficient((1, 2), 0, 1) == SymbolPoly.one(2, 1)
    assert moyal_coefficient((2, 1), 0, 1) == SymbolPoly.one(2, 1)
    diff = moyal_coefficient((1, 2), 1, 1) - moyal_coefficient((2, 1), 1, 1)
    assert diff == bivector(1, 2, 1, 2)
    third = moyal_coefficient((1, 2, 3), 1, 1)
    pi = lambda i, j: bivector(i, j, 1, 3)
    assert third == (pi(1, 2) + pi(1, 3) + pi(2, 3)).scale(Fraction(1, 2))
    with pytest.raises(ValueError):
        moyal_coefficient((1, 1), 1, 1)


def test_cubic_constraint_examples():
    n = 3
    p = bivector(1, 2, 1, n) * bivector(1, 3, 1, n)
    assert cubic_constraint(p) == (eta(n, 1, 1) * eta(n, 1, 2) * eta(n, 1, 3)).scale(2)
    assert not cubic_constraint(bivector(1, 2, 1, 2))
    assert not cubic_constraint(SymbolPoly.one(2, 1))


def test_harmonic_constraint_examples():
    p = xi(2, 1, 1) * eta(2, 1, 2) - xi(2, 1, 2) * eta(2, 1, 1)
    assert not harmonic_constraints(p, 1)
    assert harmonic_constraints(xi(2, 1, 1) * eta(2, 1, 1), 1) == eta(2, 1, 1) ** 2
    with pytest.raises(ValueError):
        harmonic_constraints(bivector(1, 2, 2, 2), 1)
    with pytest.raises(ValueError):
        harmonic_constraints(p, 0)


@given(symbols(max_degree=4))
def test_cubic_is_second_harmonic_constraint(p):
    assert cubic_constraint(p) == harmonic_constraints(p, 2)


@given(symbols(), st.data())
def test_cubic_constraint_is_equivariant(p, data):
    perm = data.draw(st.permutations(range(1, p.n + 1)))
    full = tuple(perm) + (p.n + 1,)
    assert snp1_action(full, cubic_constraint(p)) == cubic_constraint(snp1_action(full, p))


def test_snp1_examples():
    n = 3
    p = bivector(1, 2, 1, n)
    assert snp1_action((1, 2, 3, 4), p) == p
    assert snp1_action((3, 1, 2, 4), p) == bivector(3, 1, 1, n)
    for m in range(1, n + 1):
        swap = simple_transposition(n + 1, n)
        q = bivector(1, 2, 1, n) * xi(n, 1, m)
        assert snp1_action(swap, snp1_action(swap, q)) == q
    with pytest.raises(ValueError):
        snp1_action((1, 2, 3), p)


@settings(max_examples=30, deadline=None)
@given(symbols(n_max=4, d=1, max_degree=6), st.data())
def test_coxeter_relations(p, data):
    N = p.n + 1
    i = data.draw(st.integers(min_value=1, max_value=N - 1))
    s = simple_transposition(N, i)
    assert snp1_action(s, snp1_action(s, p)) == p
    if i + 1 <= N - 1:
        t = simple_transposition(N, i + 1)
        lhs = snp1_action(s, snp1_action(t, snp1_action(s, p)))
        rhs = snp1_action(t, snp1_action(s, snp1_action(t, p)))
        assert lhs == rhs
    for j in range(i + 2, N):
        t = simple_transposition(N, j)
        assert snp1_action(s, snp1_action(t, p)) == snp1_action(t, snp1_action(s, p))


@settings(max_examples=20, deadline=None)
@given(symbols(n_max=3, d=2, max_degree=4), st.data())
def test_action_is_a_homomorphism(p, data):
    N = p.n + 1
    a = tuple(data.draw(st.permutations(range(1, N + 1))))
    b = tuple(data.draw(st.permutations(range(1, N + 1))))
    assert snp1_action(a, snp1_action(b, p)) == snp1_action(compose_perms(a, b), p)


@given(graphs(), st.data())
def test_graph_symbol_is_equivariant(G, data):
    perm = data.draw(st.permutations(range(1, G.n + 1)))
    moved = Multigraph(G.n, [(perm[a - 1], perm[b - 1]) for a, b in G.edges])
    full = tuple(perm) + (G.n + 1,)
    # edges are stored sorted, so each reversed edge contributes a sign
    flips = sum(1 for a, b in G.edges if perm[a - 1] > perm[b - 1])
    assert graph_symbol(moved, 1).scale((-1) ** flips) == snp1_action(full, graph_symbol(G, 1))
    assert graph_symbol(G, 1).is_homogeneous(2 * len(G.edges)) or not graph_symbol(G, 1)


@given(symbols(d=2))
def test_json_round_trip(p):
    assert poly_from_json(poly_to_json(p), p.n, p.d) == p
