"""Regression suites shared by the command line and the test-suite.

Every check produces a report of the form

    {id, lambda, group, window: {n_max, m_max}, mismatches: [{n, m, expected, got}], status}

with status "pass" or "fail".  Values that are computed but have no trusted
reference go to a separate list of notes and never affect the outcome.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable

from . import series as R
from .characters import cyclic_induced_character, cyclic_induced_multiplicity, restrict_decomposition
from .combinat import pad_exists, partitions_up_to, serialize_partition
from .spaces import (
    containment,
    decompose,
    graded_character,
    inv_space,
    max_order,
    quant_spaces,
    sc_space,
    space,
)

log = logging.getLogger(__name__)

# Hilbert series of Inv_n(C^2) by m
FIGURE1 = {
    1: [1],
    2: [1, 1],
    3: [1, 3, 2],
    4: [1, 6, 10, 6, 1],
    5: [1, 10, 30, 41, 30, 9],
    6: [1, 15, 70, 161, 224],
}


@dataclass(frozen=True)
class Budget:
    """Caps on (n, d, m) for exact computations.

    "standard" keeps every suite at desk scale; "full" also admits Inv_6(C^2)_8,
    Inv_5(C^4)_8 and the other points marked as expensive below.
    """

    name: str = "standard"

    def __post_init__(self):
        if self.name not in ("standard", "full"):
            raise ValueError(f"unknown budget {self.name!r}")

    def allows(self, kind: str, n: int, d: int, m: int) -> bool:
        if self.name == "full":
            return True
        if kind == "quant":
            return n <= 5
        if kind == "sc":
            return n <= 5 or (n == 6 and d == 1)
        if d == 1:
            return n <= 5 or (n == 6 and m <= 3)
        if d == 2:
            return (n <= 4 and m <= 7) or (n == 5 and m <= 3) or (n == 6 and m <= 2)
        return n <= 4 and m <= 3

    def m_range(self, kind: str, n: int, d: int) -> list[int]:
        return [m for m in range(max_order(kind, n, d) + 1) if self.allows(kind, n, d, m)]


def report(check_id: str, mismatches: list, window: tuple[int, int], lam=None, group=None, checked=None) -> dict:
    out = {
        "id": check_id,
        "lambda": None if lam is None else serialize_partition(lam),
        "group": group,
        "window": {"n_max": window[0], "m_max": window[1]},
        "mismatches": mismatches,
        "status": "fail" if mismatches else "pass",
    }
    if checked is not None:
        out["checked"] = checked
        if not checked and not mismatches:
            out["status"] = "fail"
    return out


def _mm(n, m, expected, got) -> dict:
    return {"n": n, "m": m, "expected": expected, "got": got}


Progress = Callable[[str], None]


def _say(progress: Progress | None, text: str) -> None:
    (progress or log.info)(text)


# ---------------------------------------------------------------- figure 1


def suite_figure1(budget: Budget = Budget(), progress: Progress | None = None) -> dict:
    checks = []
    for n, row in FIGURE1.items():
        mism = []
        ms = [m for m in range(len(row)) if budget.allows("inv", n, 1, m)]
        if n <= 5:
            ms = list(range(comb(n, 2) + 1))
        for m in ms:
            _say(progress, f"figure1: Inv_{n}(C^2)_{2 * m}")
            got = inv_space(n, 1, m).dim
            expected = row[m] if m < len(row) else 0
            if got != expected:
                mism.append(_mm(n, m, expected, got))
        checks.append(report(f"figure1-n{n}", mism, (n, max(ms)), group="n", checked=len(ms)))
    return {"suite": "figure1", "checks": checks, "notes": []}


# ---------------------------------------------------------------- methods


def suite_methods(budget: Budget = Budget(), progress: Progress | None = None) -> dict:
    """Graph span and harmonic kernel give identical canonical bases."""
    checks = []
    for n in range(1, 7):
        ms = budget.m_range("inv", n, 1)
        mism = []
        for m in ms:
            _say(progress, f"methods: n={n} m={m}")
            a, b = inv_space(n, 1, m, "graph"), inv_space(n, 1, m, "harmonic")
            if a.rows != b.rows:
                mism.append(_mm(n, m, a.dim, b.dim))
        checks.append(report(f"methods-n{n}", mism, (n, max(ms)), checked=len(ms)))
    return {"suite": "methods", "checks": checks, "notes": []}


# ---------------------------------------------------------------- chain


def suite_chain(budget: Budget = Budget(), progress: Progress | None = None) -> dict:
    checks, notes = [], []
    for n in range(1, 6):
        mism = []
        ms = list(range(max_order("inv", n, 1) + 1))
        for m in ms:
            _say(progress, f"chain: n={n} m={m}")
            sc, qu, iv = sc_space(n, 1, m), space("quant", n, 1, m), inv_space(n, 1, m)
            if not containment(sc, qu):
                mism.append(_mm(n, m, "SC in Quant", "not contained"))
            if not containment(qu, iv):
                mism.append(_mm(n, m, "Quant in Inv", "not contained"))
        checks.append(report(f"chain-n{n}", mism, (n, ms[-1]), checked=len(ms)))

    sep = []
    if sc_space(4, 1, 4).dim != 0:
        sep.append(_mm(4, 4, "dim SC = 0", sc_space(4, 1, 4).dim))
    if space("quant", 4, 1, 4).dim != 1:
        sep.append(_mm(4, 4, "dim Quant = 1", space("quant", 4, 1, 4).dim))
    q58, i58 = space("quant", 5, 1, 4), inv_space(5, 1, 4)
    if not (containment(q58, i58) and q58.dim < i58.dim):
        sep.append(_mm(5, 4, "Quant strictly inside Inv", f"{q58.dim} vs {i58.dim}"))
    checks.append(report("separations", sep, (5, 4), checked=3))
    notes.append({"id": "quant-5-order8", "value": q58.dim, "inv": i58.dim})

    agree, count = [], 0
    for d in (1, 2):
        for n in range(1, 6):
            for m in range(max_order("inv", n, d) + 1):
                low = n == 3 and d == 1
                if not (low or 2 * m <= 2 * d + 4) or not budget.allows("inv", n, d, m):
                    continue
                if not budget.allows("quant", n, d, m):
                    continue
                _say(progress, f"chain: equality n={n} d={d} m={m}")
                sc, qu, iv = sc_space(n, d, m), space("quant", n, d, m), inv_space(n, d, m)
                count += 1
                if not (sc.same_space(qu) and qu.same_space(iv)):
                    agree.append({"n": n, "m": m, "expected": "SC = Quant = Inv", "got": [sc.dim, qu.dim, iv.dim], "d": d})
    checks.append(report("low-order-equality", agree, (5, 4), checked=count))
    return {"suite": "chain", "checks": checks, "notes": notes}


# ---------------------------------------------------------------- structure


def suite_structure(budget: Budget = Budget(), progress: Progress | None = None) -> dict:
    checks = []
    for d in (1, 2):
        mism, char_mism = [], []
        for n in range(1, 6):
            _say(progress, f"structure: Quant_{n} d={d}")
            bases = quant_spaces(n, d)
            total = sum(b.dim for b in bases)
            if total != factorial(n):
                mism.append(_mm(n, None, factorial(n), total))
            if d == 1:
                ch = graded_character(bases, "n+1").total()
                if ch != cyclic_induced_character(n + 1, 0):
                    char_mism.append(_mm(n, None, "Ind trivial", str(ch)))
        checks.append(report(f"quant-total-d{d}", mism, (5, None), checked=5))
        if d == 1:
            checks.append(report("quant-cyclic-character", char_mism, (5, None), group="n+1", checked=5))
    mism, count = [], 0
    for n in range(1, 6):
        for m in range(max_order("inv", n, 1) + 1):
            _say(progress, f"structure: branching n={n} m={m}")
            b = inv_space(n, 1, m)
            big, small = decompose(b, "n+1"), decompose(b, "n")
            count += 1
            branched = {k: v for k, v in restrict_decomposition(big).items() if v}
            if branched != {k: v for k, v in small.items() if v}:
                mism.append(_mm(n, m, _fmt(small), _fmt(branched)))
    checks.append(report("branching", mism, (5, 10), checked=count))
    return {"suite": "structure", "checks": checks, "notes": []}


def _fmt(mults) -> dict:
    return {serialize_partition(k): v for k, v in sorted(mults.items()) if v}


# ---------------------------------------------------------------- dimension polynomials


def _dimpoly_points(budget: Budget) -> list[tuple[str, str, int, int, int]]:
    pts = []
    for n in range(2, 7):
        pts.append(("inv-order2", "inv", n, 1, 1))
        pts.append(("inv-c2-order4", "inv", n, 1, 2))
        pts.append(("inv-c2-order6", "inv", n, 1, 3))
    for n in range(2, 6):
        pts.append(("inv-order2", "inv", n, 2, 1))
        pts.append(("inv-v4-order4", "inv", n, 2, 2))
        pts.append(("inv-c4-order6", "inv", n, 2, 3))
    for n in range(2, 5):
        pts.append(("inv-v6-order6", "inv", n, 3, 3))
    for n in range(2, 7):
        pts.append(("inv-c2-order8", "inv", n, 1, 4))
        pts.append(("sc-c2-order8", "sc", n, 1, 4))
    return [p for p in pts if budget.allows(p[1], p[2], p[3], p[4])]


def suite_dimpoly(budget: Budget = Budget(), progress: Progress | None = None) -> dict:
    mism = []
    pts = _dimpoly_points(budget)
    for pid, kind, n, d, m in pts:
        _say(progress, f"dimpoly: {pid} n={n}")
        expected = R.dim_polynomial(pid, n)
        got = space(kind, n, d, m).dim
        if expected != got:
            mism.append({"n": n, "m": m, "expected": str(expected), "got": got, "id": pid, "d": d})
    notes = []
    for n in range(2, 6):
        value = space("quant", n, 1, 4).dim
        notes.append({"id": "quant-c2-order8", "n": n, "computed": value, "polynomial": str(R.dim_polynomial("quant-c2-order8", n))})
    checks = [report("dimension-polynomials", mism, (6, 4), checked=len(pts))]
    return {"suite": "dimpoly", "checks": checks, "notes": notes}


# ---------------------------------------------------------------- generating functions


def table_points(d: int, budget: Budget) -> list[tuple[int, int]]:
    if d == 1:
        return [(n, m) for n in range(1, 7) for m in budget.m_range("inv", n, 1) if m <= (comb(n, 2) if n <= 5 else 4)]
    return [(n, m) for n in range(1, 6) for m in range(4) if budget.allows("inv", n, d, m)]


def suite_genfun(budget: Budget = Budget(), progress: Progress | None = None, tables=None) -> dict:
    checks, notes = [], []
    tables = tables or {}
    for d in (1, 2):
        if d not in tables:
            tables[d] = R.build_table("inv", d, table_points(d, budget), progress=progress)
    t1, t2 = tables[1], tables[2]

    for d, table in ((1, t1), (2, t2)):
        pts = table.points("n")
        n_max = max(n for n, _ in pts)
        m_max = max(m for _, m in pts)
        for sid, cf in R.CLOSED_FORMS.items():
            if cf.group == "kw" or not cf.applies(d):
                continue
            rep = R.verify_table(cf.series, table, cf.lam, (n_max, m_max), cf.group, f"{sid}/d{d}")
            if rep["status"] == "no-data":
                rep["status"] = "fail"
            checks.append(rep)

    box = [(n, m) for n, m in t1.points("n+1") if m <= 4]
    mism = []
    for n, m in box:
        for lam in [(), (1,), (1, 1), (2,)]:
            e, g = R.isotypic_pattern(lam, n, m), t1.get(lam, n, m, "n+1")
            if e != g:
                mism.append({**_mm(n, m, e, g), "lambda": serialize_partition(lam)})
    checks.append(report("isotypic-orders", mism, (6, 4), group="n+1", checked=len(box)))
    mism = []
    for n, m in box:
        for lam in [(3,), (1, 1, 1), (2, 1)]:
            e, g = R.height_three_multiplicity(lam, n, m), t1.get(lam, n, m, "n+1")
            if e != g:
                mism.append({**_mm(n, m, e, g), "lambda": serialize_partition(lam)})
    checks.append(report("height-three-table", mism, (6, 4), group="n+1", checked=len(box)))

    for (group, lam, scope), _ in R.NUMERATORS_AT_ONE.items():
        table = t1 if scope == "c2" else t2
        pts = table.points(group)
        have = set(pts)
        window = (5, 3)
        if scope == "c2":
            window = (6, 4) if (6, 4) in have else (5, 4)
        box = [(n, m) for n in range(1, window[0] + 1) for m in range(window[1] + 1) if m <= max_order("inv", n, table.d)]
        if not all(p in have for p in box):
            continue
        notes.append({"id": "numerator-at-one", **R.numerator_check(table, lam, group, scope, window)})

    checks.extend(lie_checks(6 if budget.allows("sc", 6, 1, 5) else 5, progress))
    return {"suite": "genfun", "checks": checks, "notes": notes}


def lie_checks(n_max: int, progress: Progress | None = None) -> list[dict]:
    """Top order of SC_n(C^2) against the free Lie algebra series, |lam| <= 3."""
    mism_n, mism_p = [], []
    for n in range(2, n_max + 1):
        _say(progress, f"lie: SC_{n}(C^2)_{2 * (n - 1)}")
        b = sc_space(n, 1, n - 1)
        dn, dp = decompose(b, "n"), decompose(b, "n+1")
        for lam in partitions_up_to(3):
            if pad_exists(lam, n):
                e, g = R.lie_series(lam, n)[n], dn.get(lam.pad(n), 0)
                if e != g:
                    mism_n.append({**_mm(n, n - 1, e, g), "lambda": serialize_partition(lam)})
            if pad_exists(lam, n + 1):
                e, g = R.whitehouse_series(lam, n)[n], dp.get(lam.pad(n + 1), 0)
                if e != g:
                    mism_p.append({**_mm(n, n - 1, e, g), "lambda": serialize_partition(lam)})
    return [
        report("lie-top-order", mism_n, (n_max, n_max - 1), group="n", checked=n_max - 1),
        report("lie-top-order+", mism_p, (n_max, n_max - 1), group="n+1", checked=n_max - 1),
    ]


# ---------------------------------------------------------------- cyclic inductions


def suite_kw(budget: Budget = Budget(), progress: Progress | None = None, n_max: int = 12, t_order: int = 40) -> dict:
    checks = []
    for lam in partitions_up_to(4):
        if lam.size == 0:
            continue
        for c in (0, 1):
            _say(progress, f"kw: lam={serialize_partition(lam)} c={c}")
            mism = []
            for n in range(n_max + 1):
                if not pad_exists(lam, n + 1):
                    continue
                a = cyclic_induced_multiplicity(n, c, lam, "tableau")
                b = cyclic_induced_multiplicity(n, c, lam, "character")
                if a != b:
                    mism.append(_mm(n, None, b, a))
            checks.append(report(f"kw-tableau-c{c}", mism, (n_max, None), lam=lam))
            if lam.size >= 2:
                s = R.kw_series(lam, c, t_order)
                fit = []
                if not s.polynomial:
                    fit.append({"n": None, "m": None, "expected": "polynomial", "got": s.numerator})
                if s.value_at_one != factorial(lam.size - 1):
                    fit.append({"n": None, "m": None, "expected": factorial(lam.size - 1), "got": s.value_at_one})
                checks.append(report(f"kw-fit-c{c}", fit, (t_order, None), lam=lam))
    s = R.kw_series((1,), 0, t_order)
    zero = [_mm(n, None, 0, v) for n, v in s.coefficients.items() if v]
    checks.append(report("kw-reflection-zero", zero, (t_order, None), lam=(1,)))
    ref = R.expand(R.closed_form("wedge4-cyclic"), t_order, 0)
    got = R.kw_series((1, 1, 1, 1), 0, t_order).coefficients
    mism = [_mm(n, None, ref.get((0, n), 0), v) for n, v in got.items() if ref.get((0, n), 0) != v]
    checks.append(report("wedge4-cyclic", mism, (t_order, None), lam=(1, 1, 1, 1), checked=len(got)))
    return {"suite": "kw", "checks": checks, "notes": []}


# ---------------------------------------------------------------- Poisson operad


def suite_operad(budget: Budget = Budget(), progress: Progress | None = None, n_max: int = 4) -> dict:
    checks = []
    mism = []
    for n in range(1, 6):
        d = (n // 2) or 1  # 2d >= n - 1
        for m in range(n):
            if not budget.allows("sc", n, d, m):
                continue
            _say(progress, f"operad: SC_{n}(C^{2 * d})_{2 * m}")
            got, expected = sc_space(n, d, m).dim, R.poisson_dimension(n, m)
            if got != expected:
                mism.append({**_mm(n, m, expected, got), "d": d})
    checks.append(report("poisson-dimension", mism, (5, 4)))
    lie4 = sc_space(4, 2, 3).dim
    checks.append(report("lie4", [] if lie4 == 6 else [_mm(4, 3, 6, lie4)], (4, 3)))

    notes = []
    for variant in ("d-1", "i-i/d"):
        top = n_max if variant == "d-1" else 5
        product = R.poisson_character_product(top - 1, top, top, variant)
        mism = []
        for n in range(1, top + 1):
            for m in range(n):
                _say(progress, f"operad: product vs SC_{n}(C^4)_{2 * m}")
                got = R.poisson_multiplicities(product, n, m)
                ref = {k: v for k, v in decompose(sc_space(n, 2, m), "n").items() if v}
                if got != ref:
                    mism.append(_mm(n, m, _fmt(ref), {serialize_partition(k): str(v) for k, v in sorted(got.items())}))
        checks.append(report(f"poisson-product-{variant}", mism, (top, top - 1), group="n"))
    # the two exponent conventions part ways at n = 5
    product = R.poisson_character_product(4, 5, 5, "d-1")
    ref = {k: v for k, v in decompose(sc_space(5, 2, 1), "n").items() if v}
    notes.append(
        {
            "id": "poisson-product-d-1-at-n5",
            "agrees": R.poisson_multiplicities(product, 5, 1) == ref,
        }
    )
    return {"suite": "operad", "checks": checks, "notes": notes}


SUITES = {
    "figure1": suite_figure1,
    "genfun": suite_genfun,
    "kw": suite_kw,
    "chain": suite_chain,
    "dimpoly": suite_dimpoly,
    "methods": suite_methods,
    "structure": suite_structure,
    "operad": suite_operad,
}


def run_suite(name: str, budget: Budget = Budget(), progress: Progress | None = None) -> list[dict]:
    names = list(SUITES) if name == "all" else [name]
    return [SUITES[s](budget, progress) for s in names]


def passed(results: list[dict]) -> bool:
    return all(c["status"] == "pass" for r in results for c in r["checks"])
