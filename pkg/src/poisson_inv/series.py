"""Generating functions for isotypic multiplicities and their verification.

Multiplicities of rho_{lam[n]} in Inv_n(V)_{2m} are collected into series
sum s^m t^n.  Closed forms are rational functions in t and u = st whose
denominators are (1 - t) and factors (1 - u^h) over hook lengths h of lam.

The module also houses the Kraskiewicz-Weyman series of cyclic inductions,
the free Lie algebra series, dimension polynomials and the symmetric function
product for the graded characters of the Poisson operad.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Mapping, Sequence

from .characters import (
    ClassFunction,
    cyclic_induced_multiplicity,
    divisors,
    mobius,
    multiplicity,
    z_centralizer,
)
from .combinat import Partition, pad_exists, partitions, serialize_partition

__all__ = [
    "RationalSeries",
    "expand",
    "closed_form",
    "closed_form_info",
    "CLOSED_FORMS",
    "MultiplicityTable",
    "build_table",
    "verify_table",
    "KWSeries",
    "kw_series",
    "lie_series",
    "whitehouse_series",
    "kappa",
    "numerator_from_table",
    "NUMERATORS_AT_ONE",
    "numerator_check",
    "isotypic_pattern",
    "height_three_multiplicity",
    "dim_polynomial",
    "DIM_POLYNOMIALS",
    "poisson_dimension",
    "poisson_character_product",
    "poisson_height_characters",
    "poisson_multiplicities",
]

Table = dict[tuple[int, int], int]  # (m, n) -> coefficient of s^m t^n


# ---------------------------------------------------------------- series


@dataclass(frozen=True)
class RationalSeries:
    """numerator / prod(1 - var^h), numerator keyed by (u exponent, t exponent).

    With u = st a monomial u^a t^b is s^a t^(a+b).
    """

    numerator: Mapping[tuple[int, int], int]
    denominator: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for var, h in self.denominator:
            if var not in ("t", "u") or h < 1:
                raise ValueError(f"bad denominator factor {(var, h)}")

    def expand(self, t_order: int, s_order: int) -> Table:
        return expand(self, t_order, s_order)

    def __str__(self) -> str:
        def mono(a, b):
            out = [f"u^{a}" if a > 1 else "u" if a else "", f"t^{b}" if b > 1 else "t" if b else ""]
            return "*".join(x for x in out if x) or "1"

        terms = sorted(((a, b), c) for (a, b), c in self.numerator.items() if c)
        num = " + ".join(f"{c}*{mono(a, b)}" if c != 1 else mono(a, b) for (a, b), c in terms) or "0"
        den = "".join(f"(1-{v}^{h})" if h > 1 else f"(1-{v})" for v, h in self.denominator)
        return f"({num})/({den})" if den else num


def _geometric(table: Table, var: str, h: int, t_order: int, s_order: int) -> Table:
    step = (h, h) if var == "u" else (0, h)
    out: Table = {}
    for (m, n), c in table.items():
        while m <= s_order and n <= t_order:
            out[(m, n)] = out.get((m, n), 0) + c
            m, n = m + step[0], n + step[1]
    return out


def expand(r: RationalSeries, t_order: int, s_order: int) -> Table:
    """Exact coefficients of s^m t^n for m <= s_order, n <= t_order (zeros omitted)."""
    table: Table = {}
    for (a, b), c in r.numerator.items():
        m, n = a, a + b
        if c and m <= s_order and n <= t_order:
            table[(m, n)] = table.get((m, n), 0) + c
    for var, h in r.denominator:
        table = _geometric(table, var, h, t_order, s_order)
    return {k: v for k, v in table.items() if v}


def _hooks_den(lam: Sequence[int]) -> tuple[tuple[str, int], ...]:
    return tuple(("u", h) for h in sorted(Partition(lam).hook_lengths(), reverse=True))


def _plus_form(lam, numerator: Mapping[tuple[int, int], int]) -> RationalSeries:
    # J (1 - u) / ((1 - t) prod (1 - u^h)); the hook 1 cancels against (1 - u)
    den = list(_hooks_den(lam))
    den.remove(("u", 1))
    return RationalSeries(dict(numerator), (("t", 1),) + tuple(den))


@dataclass(frozen=True)
class ClosedForm:
    series: RationalSeries
    lam: Partition
    group: str  # "n" or "n+1"
    scope: str  # "any", "c2" (dim V = 2) or "v" (dim V > 2)
    description: str

    def applies(self, d: int) -> bool:
        return self.scope == "any" or (self.scope == "c2") == (d == 1)


def _cf(num, den, lam, group, scope, text):
    return ClosedForm(RationalSeries(num, den), Partition(lam), group, scope, text)


T, U = ("t", 1), ("u", 1)

CLOSED_FORMS: dict[str, ClosedForm] = {
    "I-empty": _cf({(0, 0): 1}, (T,), (), "n", "any", "S_n invariants"),
    "I-1": _cf({(1, 1): 1}, (T, U), (1,), "n", "any", "lam = (1), S_n"),
    "I-2": _cf({(2, 2): 2, (4, 1): 1, (4, 2): -1}, (T, U, ("u", 2)), (2,), "n", "any", "lam = (2), S_n"),
    "I-11": _cf({(1, 2): 1, (3, 1): 1}, (T, U, ("u", 2)), (1, 1), "n", "any", "lam = (1,1), S_n"),
    "I+-empty": _cf({(0, 0): 1}, (T,), (), "n+1", "any", "S_{n+1} invariants"),
    "I+-1": _cf({}, (T,), (1,), "n+1", "any", "reflection isotypic part"),
    "I+-2": _cf({(2, 1): 1}, (T, ("u", 2)), (2,), "n+1", "any", "lam = (2), S_{n+1}"),
    "I+-11": _cf({(1, 1): 1}, (T, ("u", 2)), (1, 1), "n+1", "any", "lam = (1,1), S_{n+1}"),
    "I+-3": _cf(
        {(3, 2): 1, (4, 2): 1, (7, 1): 1, (7, 2): -1}, (T, ("u", 2), ("u", 3)), (3,), "n+1", "any", "lam = (3), S_{n+1}"
    ),
    "I+-111": _cf({(3, 2): 1, (4, 1): 1}, (T, ("u", 2), ("u", 3)), (1, 1, 1), "n+1", "any", "lam = (1,1,1), S_{n+1}"),
    "I+-21": _cf(
        {(2, 2): 1, (4, 2): 1, (5, 1): 1, (5, 2): -1}, (T, U, ("u", 3)), (2, 1), "n+1", "any", "lam = (2,1), S_{n+1}"
    ),
}
CLOSED_FORMS["I+-1111-c2"] = ClosedForm(
    _plus_form((1, 1, 1, 1), {(4, 0): 1, (4, 2): 1, (6, 1): 1, (6, 3): 1, (7, 2): 1, (8, 1): 1}),
    Partition((1, 1, 1, 1)),
    "n+1",
    "c2",
    "lam = (1,1,1,1), S_{n+1}, dim V = 2",
)
CLOSED_FORMS["I+-1111-v"] = ClosedForm(
    _plus_form((1, 1, 1, 1), {(2, 2): 1, (4, 2): 1, (6, 1): 1, (6, 3): 1, (7, 2): 1, (8, 1): 1}),
    Partition((1, 1, 1, 1)),
    "n+1",
    "v",
    "lam = (1,1,1,1), S_{n+1}, dim V > 2",
)
# a pure t series: multiplicity of lam[n+1] = (n-3,1,1,1,1) in the cyclic induction of the trivial character
CLOSED_FORMS["wedge4-cyclic"] = ClosedForm(
    RationalSeries({(0, 4): 1, (0, 6): 1, (0, 7): 1, (0, 9): 3}, (T, ("t", 2), ("t", 3), ("t", 4))),
    Partition((1, 1, 1, 1)),
    "kw",
    "any",
    "wedge^4 h in Ind from Z/(n+1) of the trivial character",
)


def closed_form(series_id: str) -> RationalSeries:
    return closed_form_info(series_id).series


def closed_form_info(series_id: str) -> ClosedForm:
    try:
        return CLOSED_FORMS[series_id]
    except KeyError:
        raise KeyError(f"unknown series id {series_id!r}; known: {sorted(CLOSED_FORMS)}") from None


# ---------------------------------------------------------------- tables


GROUPS = ("n", "n+1")


def _degree(n: int, group: str) -> int:
    return n if group == "n" else n + 1


@dataclass
class MultiplicityTable:
    """Multiplicities keyed by (truncated lam, n, m, group).

    Only points recorded via ``record`` count as computed.  Pairs (n, lam)
    with lam[N] undefined are never stored and read back as None.
    """

    kind: str = "inv"
    d: int = 1
    entries: dict[tuple[Partition, int, int, str], int] = field(default_factory=dict)
    computed: set[tuple[int, int, str]] = field(default_factory=set)

    def record(self, n: int, m: int, group: str, decomposition: Mapping[Sequence[int], int]) -> None:
        N = _degree(n, group)
        for full, mult in decomposition.items():
            full = Partition(full)
            if full.size != N or mult < 0 or int(mult) != mult:
                raise ValueError(f"bad entry {full}: {mult} for S_{N}")
            if mult:
                self.entries[(full.truncate(), n, m, group)] = int(mult)
        self.computed.add((n, m, group))

    def get(self, lam: Sequence[int], n: int, m: int, group: str) -> int | None:
        if (n, m, group) not in self.computed or not pad_exists(lam, _degree(n, group)):
            return None
        return self.entries.get((Partition(lam), n, m, group), 0)

    def points(self, group: str) -> list[tuple[int, int]]:
        return sorted((n, m) for n, m, g in self.computed if g == group)

    def lambdas(self, group: str) -> list[Partition]:
        return sorted({lam for lam, _, _, g in self.entries if g == group}, key=lambda p: (p.size, p))


def build_table(
    kind: str,
    d: int,
    points: Iterable[tuple[int, int]],
    groups: Sequence[str] = GROUPS,
    method: str = "default",
    progress=None,
) -> MultiplicityTable:
    """Decompose the computed spaces at every (n, m) in ``points``."""
    from .spaces import decompose, space

    table = MultiplicityTable(kind, d)
    for n, m in points:
        b = space(kind, n, d, m, method=method)
        for g in groups:
            if progress:
                progress(f"decompose {kind} n={n} d={d} m={m} group={g}")
            table.record(n, m, g, decompose(b, g))
    return table


def verify_table(
    series: RationalSeries,
    table: MultiplicityTable,
    lam: Sequence[int],
    window: tuple[int, int],
    group: str = "n+1",
    series_id: str = "",
) -> dict:
    """Compare expansion coefficients with table entries on a window (n_max, m_max).

    Expansion monomials of t-degree below |lam| + lam_1 - 1 are discarded,
    and table points where lam[N] is undefined are skipped.
    """
    lam = Partition(lam)
    n_max, m_max = window
    coeffs = expand(series, n_max, m_max)
    low = lam.size + lam.first() - 1
    mismatches = []
    checked = 0
    for n, m in table.points(group):
        if n > n_max or m > m_max or n < low:
            continue
        got = table.get(lam, n, m, group)
        if got is None:
            continue
        checked += 1
        expected = coeffs.get((m, n), 0)
        if expected != got:
            mismatches.append({"n": n, "m": m, "expected": expected, "got": got})
    if mismatches:
        status = "fail"
    else:
        status = "pass" if checked else "no-data"
    return {
        "id": series_id,
        "lambda": serialize_partition(lam),
        "group": group,
        "window": {"n_max": n_max, "m_max": m_max},
        "checked": checked,
        "mismatches": mismatches,
        "status": status,
    }


def numerator_from_table(
    table: MultiplicityTable, lam: Sequence[int], group: str, window: tuple[int, int]
) -> dict[tuple[int, int], int]:
    """Coefficients s^m t^n of the numerator J (or J+) recovered from data on a window.

    The window must be down-closed in the table; the product with the
    denominator only mixes in lower coefficients, so the result is exact there.
    """
    lam = Partition(lam)
    n_max, m_max = window
    data: Table = {}
    for n, m in table.points(group):
        if n <= n_max and m <= m_max:
            v = table.get(lam, n, m, group)
            if v:
                data[(m, n)] = v
    factors = [("t", 1)] + list(_hooks_den(lam))
    if group == "n+1":
        factors.remove(("u", 1))
    for var, h in factors:
        step = (h, h) if var == "u" else (0, h)
        data = {
            (m, n): data.get((m, n), 0) - data.get((m - step[0], n - step[1]), 0)
            for m in range(m_max + 1)
            for n in range(n_max + 1)
        }
    return {k: v for k, v in data.items() if v}


# Listed numerators at t = 1 as {s exponent: coefficient}, keyed by (group, lam, scope).
NUMERATORS_AT_ONE: dict[tuple[str, Partition, str], dict[int, int]] = {
    ("n", Partition((3,)), "c2"): {3: 3, 4: 2, 7: 1},
    ("n", Partition((1, 1, 1)), "c2"): {3: 2, 4: 3, 6: 1},
    ("n", Partition((2, 1)), "c2"): {2: 2, 4: 3, 5: 1},
    ("n+1", Partition((4,)), "c2"): {4: 2, 5: 1, 6: 2, 10: 1},
    ("n+1", Partition((1, 1, 1, 1)), "c2"): {4: 2, 6: 2, 7: 1, 8: 1},
    ("n+1", Partition((2, 2)), "c2"): {2: 1, 4: 1, 5: 1, 6: 3},
    ("n+1", Partition((2, 1, 1)), "c2"): {3: 1, 4: 1, 5: 3, 7: 1},
    ("n+1", Partition((3, 1)), "c2"): {3: 2, 5: 2, 6: 1, 7: 1},
    ("n", Partition((3,)), "v"): {3: 3, 4: 2, 7: 1},
    ("n", Partition((1, 1, 1)), "v"): {2: 1, 3: 2, 4: 2, 6: 1},
    ("n", Partition((2, 1)), "v"): {2: 2, 3: 1, 4: 3},
    ("n+1", Partition((4,)), "v"): {4: 2, 5: 1, 6: 2, 8: 1},
    ("n+1", Partition((1, 1, 1, 1)), "v"): {2: 1, 4: 1, 6: 2, 7: 1, 8: 1},
    ("n+1", Partition((2, 2)), "v"): {2: 1, 4: 2, 5: 1, 6: 2},
    ("n+1", Partition((2, 1, 1)), "v"): {3: 2, 5: 3, 7: 1},
    ("n+1", Partition((3, 1)), "v"): {3: 2, 5: 3, 6: 1},
}


def numerator_check(
    table: MultiplicityTable, lam: Sequence[int], group: str, scope: str, window: tuple[int, int]
) -> dict:
    """Compare t = 1 values of the data numerator on a window with a listed one.

    Only s-degrees up to m_max are compared.  The degree of the numerator in
    t is not bounded a priori, so sums over n <= n_max are partial; the
    outcome is reported, never asserted here.
    """
    lam = Partition(lam)
    listed = NUMERATORS_AT_ONE[(group, lam, scope)]
    n_max, m_max = window
    sums: dict[int, int] = {}
    for (m, _), c in numerator_from_table(table, lam, group, window).items():
        sums[m] = sums.get(m, 0) + c
    sums = {m: c for m, c in sorted(sums.items()) if c}
    expected = {m: c for m, c in sorted(listed.items()) if m <= m_max}
    if not any(pad_exists(lam, _degree(n, group)) for n, _ in table.points(group) if n <= n_max):
        status = "no-data"
    else:
        status = "match" if sums == expected else "differs"
    return {
        "lambda": serialize_partition(lam),
        "group": group,
        "scope": scope,
        "window": {"n_max": n_max, "m_max": m_max},
        "listed": {str(m): c for m, c in expected.items()},
        "window_sums": {str(m): c for m, c in sums.items()},
        "status": status,
    }


# ---------------------------------------------------------------- pattern formulas


def isotypic_pattern(lam: Sequence[int], n: int, m: int) -> int | None:
    """Multiplicity of lam[n+1] in Inv_n(V)_{2m} for the four smallest truncated diagrams."""
    lam = Partition(lam)
    if not pad_exists(lam, n + 1):
        return None
    if lam == Partition(()):
        return int(m == 0)
    if lam == Partition((1,)):
        return 0
    if lam == Partition((1, 1)):
        # orders 2, 6, 10, ... with n // 2 copies in all
        return int(m % 2 == 1 and m <= 2 * (n // 2) - 1)
    if lam == Partition((2,)):
        # orders 4, 8, ... with (n - 1) // 2 copies
        return int(m % 2 == 0 and 2 <= m <= 2 * ((n - 1) // 2))
    raise ValueError(f"no pattern for {lam}")


def height_three_multiplicity(lam: Sequence[int], n: int, m: int) -> int | None:
    """Multiplicity of lam[n+1] in Inv_n(V)_{2m} for |lam| = 3."""
    lam = Partition(lam)
    if lam.size != 3:
        raise ValueError("|lam| must be 3")
    if not pad_exists(lam, n + 1):
        return None
    if m <= 1 or n <= 3 or m >= n:
        return 0
    if m <= n - 2:
        return (2 * m - 1) // 3 if lam == Partition((2, 1)) else m // 3
    base = (m - 3) // 6 + int((m - 1) % 6 == 0)
    if lam == Partition((3,)):
        return base
    if lam == Partition((1, 1, 1)):
        return base + int(m % 2 == 0)
    return (m - 2) // 3


# ---------------------------------------------------------------- cyclic inductions


def _times_hooks(coeffs: Mapping[int, int], hooks: Sequence[int], order: int) -> list[int]:
    poly = [coeffs.get(k, 0) for k in range(order + 1)]
    for h in hooks:
        poly = [poly[k] - (poly[k - h] if k >= h else 0) for k in range(order + 1)]
    return poly


@dataclass
class KWSeries:
    lam: Partition
    c: int
    t_order: int
    coefficients: dict[int, int]  # t^n -> multiplicity of lam[n+1]; undefined n absent
    numerator: list[int] | None = None  # K with the shift t^(|lam|+lam_1-1) removed
    polynomial: bool | None = None  # product with the hook factors vanishes past deg K
    value_at_one: int | None = None

    @property
    def fit_ok(self) -> bool | None:
        if self.polynomial is None:
            return None
        return self.polynomial and self.value_at_one == factorial(self.lam.size - 1)


def kw_series(lam: Sequence[int], c: int, t_order: int, method: str = "character") -> KWSeries:
    """Series sum_n mult(lam[n+1], Ind_{Z/(n+1)}^{S_{n+1}} chi_c) t^n.

    For |lam| >= 2 the product with prod(1 - t^h) is checked to be a
    polynomial t^(|lam|+lam_1-1) K(t) with deg K < sum h, and K(1) is reported.
    """
    lam = Partition(lam)
    if lam.size < 1:
        raise ValueError("|lam| >= 1 required")
    coeffs = {
        n: cyclic_induced_multiplicity(n, c, lam, method) for n in range(t_order + 1) if pad_exists(lam, n + 1)
    }
    out = KWSeries(lam, c, t_order, coeffs)
    if lam.size >= 2:
        hooks = lam.hook_lengths()
        shift = lam.size + lam.first() - 1
        top = shift + sum(hooks)  # first degree that must vanish
        if top <= t_order:
            poly = _times_hooks(coeffs, hooks, t_order)
            out.numerator = poly[shift:top]
            out.polynomial = not any(poly[:shift]) and not any(poly[top:])
            out.value_at_one = sum(out.numerator)
    return out


def lie_series(lam: Sequence[int], n_max: int) -> dict[int, int]:
    """{n: multiplicity of lam[n] in Lie_n = Ind_{Z/n}^{S_n} chi_1} for n <= n_max."""
    lam = Partition(lam)
    return {n: cyclic_induced_multiplicity(n - 1, 1, lam) for n in range(1, n_max + 1) if pad_exists(lam, n)}


def _lie_full(full: Partition) -> int:
    return cyclic_induced_multiplicity(full.size - 1, 1, full.truncate())


def whitehouse_series(lam: Sequence[int], n_max: int) -> dict[int, int]:
    """{n: multiplicity of lam[n+1] in Lie_n with its S_{n+1}-action}.

    Uses Ind_{S_n}^{S_{n+1}} Lie_n = Lie_{n+1} + (Lie_n as an S_{n+1}-module).
    """
    lam = Partition(lam)
    out = {}
    for n in range(1, n_max + 1):
        if not pad_exists(lam, n + 1):
            continue
        full = lam.pad(n + 1)
        induced = 0
        for i in full.removable_corners():
            parts = list(full)
            parts[i] -= 1
            induced += _lie_full(Partition(p for p in parts if p))
        out[n] = induced - _lie_full(full)
    return out


def kappa(lam: Sequence[int], plus: bool = False, t_order: int = 30) -> list[int]:
    """Numerator kappa_lam (or kappa+_lam) of the Lie series, trailing zeros stripped.

    Lie series = t^(|lam|+lam_1) kappa / prod(1 - t^h); the S_{n+1} version is
    t^(|lam|+lam_1-1) (1 - t) kappa+ / prod(1 - t^h).  Raises if the window
    shows no polynomial numerator.
    """
    lam = Partition(lam)
    hooks = lam.hook_lengths()
    if plus:
        coeffs = whitehouse_series(lam, t_order)
        shift = lam.size + lam.first() - 1
        poly = _times_hooks(coeffs, hooks, t_order)
        # divide by (1 - t)
        acc, quotient = 0, []
        for v in poly:
            acc += v
            quotient.append(acc)
        poly = quotient
    else:
        coeffs = lie_series(lam, t_order)
        shift = lam.size + lam.first()
        poly = _times_hooks(coeffs, hooks, t_order)
    if any(poly[:shift]):
        raise ArithmeticError("series starts below the expected degree")
    body = poly[shift:]
    while body and body[-1] == 0:
        body.pop()
    if len(body) + shift > t_order - max(hooks or [1]):
        raise ArithmeticError("window too short to isolate the numerator")
    return body


# ---------------------------------------------------------------- dimension polynomials


def _c(n, k):
    return comb(n, k) if n >= 0 else 0


DIM_POLYNOMIALS = {
    "inv-order2": ("any", lambda n: Fraction(_c(n, 2))),
    "inv-c2-order4": ("c2", lambda n: Fraction(2 * _c(n + 1, 4))),
    "inv-v4-order4": ("dim V >= 4", lambda n: Fraction(_c(n, 3) * (3 * n - 1), 4)),
    "inv-c2-order6": ("c2", lambda n: Fraction(_c(n + 1, 5) * (5 * n + 16), 6)),
    "inv-c4-order6": ("dim V = 4", lambda n: Fraction(_c(n + 1, 5) * (7 * n - 10), 3)),
    "inv-v6-order6": ("dim V >= 6", lambda n: Fraction(_c(n, 4) * _c(n, 2))),
    "sc-c2-order8": ("c2", lambda n: Fraction(_c(n + 1, 6) * (n * n + 9 * n + 26), 4)),
    "quant-c2-order8": ("c2, large n", lambda n: Fraction(_c(n, 5) * (n + 5) * (n * n + 5 * n + 10), 24)),
    "inv-c2-order8": ("c2", lambda n: Fraction(_c(n + 1, 5) * (n**3 + 5 * n * n - 10 * n - 80), 24)),
}


def dim_polynomial(poly_id: str, n: int) -> Fraction:
    try:
        _, f = DIM_POLYNOMIALS[poly_id]
    except KeyError:
        raise KeyError(f"unknown polynomial id {poly_id!r}; known: {sorted(DIM_POLYNOMIALS)}") from None
    return f(n)


def poisson_dimension(n: int, m: int) -> int:
    """dim (P_n)_{2m}: set partitions into Lie blocks carrying m brackets in total."""
    total = Fraction(0)
    # i_j blocks of size j + 1 each, sum j i_j = m
    for mu in partitions(m):
        counts: dict[int, int] = {}
        for j in mu:
            counts[j] = counts.get(j, 0) + 1
        rest = n - m - len(mu)
        if rest < 0:
            continue
        den = factorial(rest) * prod((j + 1) ** i * factorial(i) for j, i in counts.items())
        total += Fraction(factorial(n), den)
    if total.denominator != 1:
        raise ArithmeticError("non-integer dimension")
    return int(total)


# ---------------------------------------------------------------- Poisson operad characters

PKey = tuple[int, int, tuple[int, ...]]  # (s exponent, t exponent, cycle type as descending tuple)
PSeries = dict[PKey, Fraction]


def _pmul(a: PSeries, b: PSeries, s_order: int, t_order: int, p_order: int) -> PSeries:
    out: PSeries = {}
    for (m1, n1, r1), c1 in a.items():
        for (m2, n2, r2), c2 in b.items():
            m, n = m1 + m2, n1 + n2
            if m > s_order or n > t_order or sum(r1) + sum(r2) > p_order:
                continue
            key = (m, n, tuple(sorted(r1 + r2, reverse=True)))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _g_exponent(i: int, d: int, variant: str) -> int:
    if variant == "d-1":
        return d - 1
    if variant == "i-i/d":
        return i - i // d
    raise ValueError(f"unknown exponent variant {variant!r}")


def poisson_character_product(s_order: int, t_order: int, max_p_vars: int, variant: str = "d-1") -> PSeries:
    """Truncated expansion of

        exp(-sum p_i / i) / (1 - t) * prod_i (1 - q_i s^i)^(-g_i(s) / (i s^i)),

    q_i = p_i t^i / (1 - s^i t^i), g_i(s) = sum_{d | i} mu(d) s^e(i, d).  Keys are
    (m, n, rho) for the monomial s^m t^n p_rho; p-degree is the size of rho.
    Nothing is discarded here; see poisson_height_characters.

    ``variant`` selects e(i, d): "d-1" as usually quoted, or "i-i/d", which is
    what the composition Com o Lie gives.  They agree unless 4 | i, so the two
    products differ only in p-degree >= 4, first visible for lam[n] at n = 5.
    """
    K = max_p_vars
    bounds = (s_order, t_order, K)
    log: PSeries = {}

    def add(key, v):
        log[key] = log.get(key, 0) + v

    for i in range(1, K + 1):
        add((0, 0, (i,)), Fraction(-1, i))
        g: dict[int, int] = {}
        for d in divisors(i):
            e = _g_exponent(i, d, variant)
            g[e] = g.get(e, 0) + mobius(d)
        # -a log(1 - X) with X = q_i s^i and a = g_i / (i s^i):  sum_r g_i s^(i(r-1)) q_i^r / (i r)
        for r in range(1, K // i + 1):
            for j in range(0, s_order // i + 1):
                # q_i^r = p_i^r t^(ir) sum_j C(r+j-1, j) (s t)^(ij)
                coeff = Fraction(comb(r + j - 1, j), i * r)
                for e, mu in g.items():
                    m = e + i * (r - 1) + i * j
                    n = i * r + i * j
                    if m <= s_order and n <= t_order:
                        add((m, n, (i,) * r), coeff * mu)
    log = {k: v for k, v in log.items() if v}
    result: PSeries = {(0, 0, ()): Fraction(1)}
    power: PSeries = {(0, 0, ()): Fraction(1)}
    for j in range(1, K + 1):
        power = _pmul(power, log, *bounds)
        for k, v in power.items():
            result[k] = result.get(k, 0) + v / factorial(j)
    geometric = {(0, n, ()): Fraction(1) for n in range(t_order + 1)}
    result = _pmul(result, geometric, *bounds)
    return {k: v for k, v in result.items() if v}


def poisson_height_characters(series: PSeries, n: int, m: int) -> dict[int, ClassFunction]:
    """Height-k characters (as S_k class functions) at s^m t^n, p-degree k <= n only."""
    out = {}
    for k in range(0, n + 1):
        values = {}
        for rho in partitions(k):
            c = series.get((m, n, tuple(rho)), 0)
            values[tuple(rho)] = c * z_centralizer(rho)
        if any(values.values()):
            out[k] = ClassFunction(k, values)
    return out


def poisson_multiplicities(series: PSeries, n: int, m: int) -> dict[Partition, int | Fraction]:
    """S_n multiplicities of (P_n)_{2m} read off the product, keyed by full partitions.

    Only lam with lam[n] defined are read; the rest of each height-k part
    carries no meaning and need not even be a virtual character.  A
    non-integer value is returned as a Fraction so comparisons fail loudly.
    """
    out: dict[Partition, int | Fraction] = {}
    for k, chi in poisson_height_characters(series, n, m).items():
        for lam in partitions(k):
            if not pad_exists(lam, n):
                continue
            mult = multiplicity(chi, lam)
            if mult:
                out[Partition(lam).pad(n)] = int(mult) if mult.denominator == 1 else mult
    return out
