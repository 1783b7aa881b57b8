"""Exact linear algebra over the rationals for sparse vectors.

Vectors are dicts from hashable, totally ordered keys to ``int``/``Fraction``.
Echelon forms take the largest key of a row as its pivot, so a reduced echelon
basis is canonical for a fixed key order.

Small systems use a pure-Python fraction-free elimination.  Large kernels go
through python-flint: the constraint rows are first compressed by a random
sparse integer combination, the kernel of the compressed system is computed
exactly, and every kernel vector is then checked against the uncompressed
system.  The check makes the result exact (the compressed kernel always
contains the true kernel, so equality follows once all its vectors pass).
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import flint

Vector = dict

# systems with at most this many (rows * columns) stay in pure Python
SMALL_SYSTEM = 40000


def _content(row: Mapping) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def integral(row: Mapping) -> dict:
    """Scale a rational row to a primitive integer row (positive leading key)."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {k: int(v * den) for k, v in row.items() if v}
    g = _content(out)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def _eliminate(row: dict, basis_row: dict, pivot) -> dict:
    a, b = basis_row[pivot], row[pivot]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {k: a * v for k, v in row.items()}
    for k, v in basis_row.items():
        w = out.get(k, 0) - b * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    g = _content(out)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


class EchelonBuilder:
    """Incremental fraction-free echelon form with largest-key pivots."""

    def __init__(self):
        self.rows: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, row: Mapping) -> dict:
        row = integral(row)
        while row:
            pivot = max(row)
            basis_row = self.rows.get(pivot)
            if basis_row is None:
                return row
            row = _eliminate(row, basis_row, pivot)
        return row

    def add(self, row: Mapping) -> bool:
        """Insert ``row``; return True when it was independent."""
        row = self.reduce(row)
        if not row:
            return False
        self.rows[max(row)] = row
        return True

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(row)

    def reduced_rows(self) -> list[dict]:
        """Reduced echelon rows with unit pivots, sorted by decreasing pivot."""
        pivots = sorted(self.rows)
        done: dict = {}
        for p in pivots:
            row = dict(self.rows[p])
            # earlier rows hold no pivot key but their own, so one pass suffices
            for q in [k for k in row if k != p and k in done]:
                row = _eliminate(row, done[q], q)
            done[p] = row
        out = []
        for p in sorted(done, reverse=True):
            row = done[p]
            lead = row[p]
            out.append({k: _normal(Fraction(v, lead)) for k, v in row.items()})
        return out


def _normal(v: Fraction):
    return v.numerator if v.denominator == 1 else v


def rref(rows: Iterable[Mapping]) -> list[dict]:
    """Canonical reduced echelon basis of the span of ``rows``."""
    builder = EchelonBuilder()
    for r in rows:
        builder.add(r)
    return builder.reduced_rows()


def rank(rows: Iterable[Mapping]) -> int:
    builder = EchelonBuilder()
    for r in rows:
        builder.add(r)
    return len(builder)


def in_span(rref_rows: Sequence[Mapping], vector: Mapping) -> bool:
    """Membership test against reduced echelon rows (pivot = largest key)."""
    rest = {k: v for k, v in vector.items() if v}
    for row in rref_rows:
        p = max(row)
        c = rest.get(p)
        if c:
            for k, v in row.items():
                w = rest.get(k, 0) - c * v
                if w:
                    rest[k] = w
                else:
                    rest.pop(k, None)
    return not rest


def combine(rows: Sequence[Mapping], coeffs: Sequence) -> dict:
    out: dict = {}
    for row, c in zip(rows, coeffs):
        if c:
            for k, v in row.items():
                w = out.get(k, 0) + c * v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
    return out


# ---------------------------------------------------------------- kernels

def _kernel_python(columns: Sequence[Mapping], ncols: int) -> list[list[int]]:
    by_row: dict = {}
    for j, col in enumerate(columns):
        for key, v in col.items():
            by_row.setdefault(key, {})[j] = v
    builder = EchelonBuilder()
    for row in by_row.values():
        builder.add(row)
    reduced = builder.reduced_rows()
    pivots = {max(r): r for r in reduced}
    kernel = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec: dict = {f: Fraction(1)}
        for p, r in pivots.items():
            c = r.get(f)
            if c:
                vec[p] = -c
        kernel.append(_dense_integral(vec, ncols))
    return kernel


def _dense_integral(vec: Mapping[int, object], ncols: int) -> list[int]:
    row = integral(vec)
    return [row.get(j, 0) for j in range(ncols)]


def _kernel_flint(columns: Sequence[Mapping], ncols: int, seed: int) -> list[list[int]]:
    row_keys: dict = {}
    for col in columns:
        for key in col:
            if key not in row_keys:
                row_keys[key] = len(row_keys)
    R = len(row_keys)
    rng = random.Random(seed)
    target = ncols + 16
    attempt = 0
    while True:
        if R <= target:
            dense = [[0] * ncols for _ in range(R)]
            for j, col in enumerate(columns):
                for key, v in col.items():
                    dense[row_keys[key]][j] += v
        else:
            # each original row is spread into a few random compressed rows
            spread = 3 + 2 * attempt
            mix = [[(rng.randrange(target), rng.choice((-3, -2, -1, 1, 2, 3))) for _ in range(spread)]
                   for _ in range(R)]
            dense = [[0] * ncols for _ in range(target)]
            for j, col in enumerate(columns):
                for key, v in col.items():
                    for t, s in mix[row_keys[key]]:
                        dense[t][j] += s * v
        if not dense:
            return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        X, nullity = flint.fmpz_mat(dense).nullspace()
        kernel = []
        for c in range(nullity):
            vec = [int(X[i, c]) for i in range(ncols)]
            g = 0
            for v in vec:
                g = gcd(g, v)
            kernel.append([v // g for v in vec] if g > 1 else vec)
        if R <= target or all(_is_null(columns, vec) for vec in kernel):
            return kernel
        attempt += 1
        target += 16 * attempt


def _is_null(columns: Sequence[Mapping], vec: Sequence[int]) -> bool:
    acc: dict = {}
    for col, c in zip(columns, vec):
        if c:
            for k, v in col.items():
                acc[k] = acc.get(k, 0) + c * v
    return not any(acc.values())


def kernel(columns: Sequence[Mapping], ncols: int | None = None, seed: int = 12345) -> list[list[int]]:
    """Integer basis of {y : sum_j y_j columns[j] = 0}.

    ``columns[j]`` is the sparse image of the j-th coordinate vector.  The
    returned basis spans the exact rational kernel.
    """
    if ncols is None:
        ncols = len(columns)
    if ncols == 0:
        return []
    nrows = len({k for col in columns for k in col})
    if nrows == 0:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    if nrows * ncols <= SMALL_SYSTEM:
        return _kernel_python(columns, ncols)
    # flint wants integers: scale each column, then undo the scaling
    scales = []
    scaled = []
    for col in columns:
        den = 1
        for v in col.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        scales.append(den)
        scaled.append(col if den == 1 else {k: int(v * den) for k, v in col.items()})
    basis = _kernel_flint(scaled, ncols, seed)
    if any(s != 1 for s in scales):
        basis = [_primitive([y * s for y, s in zip(vec, scales)]) for vec in basis]
    return basis


def _primitive(vec: list[int]) -> list[int]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    return [v // g for v in vec] if g > 1 else vec


def rref_dense(rows: Sequence[Mapping]) -> list[dict]:
    """Reduced echelon basis via flint, for many long rows.

    The result is the same canonical basis as :func:`rref`.
    """
    rows = [r for r in rows if r]
    if not rows:
        return []
    keys = sorted({k for r in rows for k in r}, reverse=True)
    index = {k: i for i, k in enumerate(keys)}
    dense = []
    for r in rows:
        ir = integral(r)
        line = [0] * len(keys)
        for k, v in ir.items():
            line[index[k]] = v
        dense.append(line)
    R, den, rk = flint.fmpz_mat(dense).rref()
    out = []
    for i in range(rk):
        entries = {}
        lead = None
        for j in range(len(keys)):
            v = int(R[i, j])
            if v:
                if lead is None:
                    lead = v
                entries[keys[j]] = _normal(Fraction(v, lead))
        out.append(entries)
    return out


def canonical_basis(rows: Sequence[Mapping]) -> list[dict]:
    rows = [r for r in rows if r]
    if not rows:
        return []
    width = len({k for r in rows for k in r})
    if len(rows) * width <= SMALL_SYSTEM:
        return rref(rows)
    return rref_dense(rows)
