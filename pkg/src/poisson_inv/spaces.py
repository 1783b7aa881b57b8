"""Invariant, semiclassical and quantum spaces of polydifferential operators.

For ``V = C^{2d}`` and ``n`` slots, the order-2m pieces

    SC_n(V)_{2m}  in  Quant_n(V)_{2m}  in  Inv_n(V)_{2m}

are built as canonical reduced echelon bases inside the symbol algebra.  All
three live in the span of graph symbols (products of ``m`` bivectors), which
splits into blocks by the per-slot degree vector; this block structure is what
keeps the computations small.

Two independent constructions of ``Inv`` are provided:

* ``graph``: the span of graph symbols intersected with the kernel of the
  single cubic constraint (any d);
* ``harmonic`` (d = 1): the kernel of ``sum_i eta_i (d/dxi_i)^r`` for
  r = 1..m inside the bidegree (m, m) slice, solved block by block for r = 1.

Characters for S_n act by permuting slots.  The S_{n+1} action views a
symbol as independent of an extra slot and substitutes minus the sum of the
other slots; traces are read off at the echelon pivots.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from . import cache, linalg
from .characters import ClassFunction, as_integer_multiplicities, representative
from .combinat import Partition, partitions
from .polydiff import (
    ETA,
    SymbolPoly,
    _compositions,
    _constraint_terms,
    edge_power_formal,
    graph_terms,
    monomial_from_string,
    monomial_to_string,
    multigraphs,
    poisson_basis,
    poisson_formal,
    formal_to_terms,
    simple_transposition,
    snp1_coefficient,
    snp1_terms,
    var_index,
)
from .harmonic import expected_har_series, har_hilbert_numeric
from .vanishing import certify_vanishing

log = logging.getLogger(__name__)

__all__ = [
    "KINDS", "METHODS", "GROUPS", "ModelError", "SpaceKey", "PointedKey", "SubspaceBasis",
    "PointedSpace", "GradedCharacter", "containment", "graph_span", "harmonic_first_kernel",
    "inv_space", "sc_space", "quant_space", "quant_spaces", "space", "max_order",
    "check_stability", "class_trace", "character", "graded_character", "decompose",
    "pointed_restrict", "pointed_harmonic", "generic_rank", "har_hilbert_numeric",
    "expected_har_series", "certify_vanishing", "top_order_bound",
]

KINDS = ("inv", "sc", "quant")
METHODS = ("harmonic", "graph", "default")


class ModelError(RuntimeError):
    """A computed space is not stable under the group action it should carry."""


@dataclass(frozen=True)
class SpaceKey:
    kind: str
    n: int
    d: int
    m: int
    method: str = "default"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.n < 1 or self.d < 1 or self.m < 0:
            raise ValueError("need n >= 1, d >= 1, m >= 0")
        if self.method == "harmonic" and self.d != 1:
            raise ValueError("the harmonic method requires d = 1")

    @property
    def tag(self) -> str:
        return f"{self.kind}-n{self.n}-d{self.d}-m{self.m}-{self.method}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "d": self.d, "m": self.m, "method": self.method}


@dataclass(frozen=True)
class PointedKey:
    k: int
    d: int
    weight: int
    order: int
    source_n: int | None = None


class SubspaceBasis:
    """Reduced echelon basis of a subspace of the symbol algebra.

    ``rows`` are sparse dicts keyed by monomial tuples, sorted by decreasing
    pivot (the largest monomial of each row), with unit pivots and zeros at
    every other pivot.
    """

    def __init__(self, key, n: int, d: int, rows: Sequence[Mapping]):
        self.key = key
        self.n = n
        self.d = d
        self.rows = [dict(r) for r in rows]
        self.pivots = [max(r) for r in self.rows]
        for r, p in zip(self.rows, self.pivots):
            if r[p] != 1:
                raise ValueError("rows must have unit pivots")

    @classmethod
    def from_vectors(cls, key, n: int, d: int, vectors: Iterable[Mapping]) -> "SubspaceBasis":
        return cls(key, n, d, linalg.canonical_basis([v for v in vectors if v]))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"SubspaceBasis({self.key}, dim={self.dim})"

    def monomials(self) -> list[tuple]:
        return sorted({mono for r in self.rows for mono in r}, reverse=True)

    def contains(self, vector: Mapping) -> bool:
        return linalg.in_span(self.rows, vector)

    def same_space(self, other: "SubspaceBasis") -> bool:
        return self.rows == other.rows

    def polys(self) -> list[SymbolPoly]:
        return [SymbolPoly(self.n, self.d, r) for r in self.rows]

    def to_json(self) -> dict:
        monos = self.monomials()
        index = {mono: i for i, mono in enumerate(monos)}
        key = self.key.to_json() if hasattr(self.key, "to_json") else None
        return {
            "key": key,
            "n": self.n,
            "d": self.d,
            "dim": self.dim,
            "monomials": [monomial_to_string(mono, self.d) for mono in monos],
            "rows": [[[index[mono], _frac(c)] for mono, c in sorted(r.items(), reverse=True)] for r in self.rows],
        }

    @classmethod
    def from_json(cls, doc: Mapping, key=None) -> "SubspaceBasis":
        n, d = doc["n"], doc["d"]
        monos = [monomial_from_string(s, n, d) for s in doc["monomials"]]
        rows = [{monos[i]: _unfrac(c) for i, c in row} for row in doc["rows"]]
        if key is None and doc.get("key"):
            key = SpaceKey(**doc["key"])
        return cls(key, n, d, rows)


def _frac(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _unfrac(text: str):
    c = Fraction(text)
    return c.numerator if c.denominator == 1 else c


def containment(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    if (a.n, a.d) != (b.n, b.d):
        raise ValueError("index mismatch: different ambient symbol algebras")
    if isinstance(a.key, SpaceKey) and isinstance(b.key, SpaceKey) and a.key.m != b.key.m:
        raise ValueError("index mismatch: different orders")
    return all(b.contains(r) for r in a.rows)


# ---------------------------------------------------------------- helpers

def top_order_bound(n: int, d: int) -> int | None:
    """Largest m with Inv_n(V)_{2m} possibly nonzero, when known (d = 1)."""
    return comb(n, 2) if d == 1 else None


def _scale_integral(row: Mapping) -> dict:
    return linalg.integral(row)


def _unit(n: int, d: int) -> dict:
    return {(0,) * (2 * n * d): 1}


# ---------------------------------------------------------------- graph span

@lru_cache(maxsize=64)
def graph_span(n: int, d: int, m: int) -> tuple:
    """Reduced echelon basis of the span of all graph symbols with m edges."""
    if m == 0:
        return (_unit(n, d),)
    blocks: dict = {}
    for G in multigraphs(n, m):
        blocks.setdefault(G.degrees(), []).append(G.edges)
    rows = []
    for deg in sorted(blocks):
        builder = linalg.EchelonBuilder()
        for edges in blocks[deg]:
            builder.add(graph_terms(n, d, edges))
        rows.extend(builder.reduced_rows())
    rows.sort(key=max, reverse=True)
    return tuple(rows)


class SpanCoordinates:
    """Coordinates of graph-span elements: the values at the echelon pivots."""

    def __init__(self, n: int, d: int, m: int):
        self.n, self.d, self.m = n, d, m
        self.rows = graph_span(n, d, m)
        self.by_pivot = {max(r): r for r in self.rows}
        self._graph_cache: dict = {}

    def of_graph(self, edges: tuple) -> dict:
        got = self._graph_cache.get(edges)
        if got is None:
            got = {mono: c for mono, c in graph_terms(self.n, self.d, edges).items() if mono in self.by_pivot}
            self._graph_cache[edges] = got
        return got

    def of_formal(self, formal: Mapping) -> dict:
        out: dict = {}
        for edges, c in formal.items():
            for p, v in self.of_graph(edges).items():
                w = out.get(p, 0) + c * v
                if w:
                    out[p] = w
                else:
                    out.pop(p, None)
        return out

    def embed(self, coords: Mapping) -> dict:
        out: dict = {}
        for p, c in coords.items():
            if c:
                for mono, v in self.by_pivot[p].items():
                    w = out.get(mono, 0) + c * v
                    if w:
                        out[mono] = w
                    else:
                        out.pop(mono, None)
        return out


# ---------------------------------------------------------------- Inv

def _combine_rows(rows: Sequence[Mapping], kernel: Sequence[Sequence[int]]) -> list[dict]:
    return [linalg.combine(rows, vec) for vec in kernel]


def _inv_graph(n: int, d: int, m: int) -> list[dict]:
    span = [_scale_integral(r) for r in graph_span(n, d, m)]
    columns = [_constraint_terms(r, n, d, 2) for r in span]
    ker = linalg.kernel(columns, len(span))
    return _combine_rows(span, ker)


def _block_monomials(c: Sequence[int], m: int) -> list[tuple]:
    # xi^alpha eta^(c - alpha) with |alpha| = m, d = 1
    n = len(c)
    out = []

    def rec(i: int, left: int, alpha: list):
        if i == n:
            if left == 0:
                mono = []
                for j in range(n):
                    mono.extend((alpha[j], c[j] - alpha[j]))
                out.append(tuple(mono))
            return
        for a in range(min(c[i], left), -1, -1):
            alpha.append(a)
            rec(i + 1, left - a, alpha)
            alpha.pop()

    rec(0, m, [])
    return out


def harmonic_first_kernel(n: int, m: int) -> list[dict]:
    """Kernel of sum_i eta_i d/dxi_i in bidegree (m, m), block by slot degree (d = 1)."""
    rows: list[dict] = []
    for c in _compositions(2 * m, n):
        monos = _block_monomials(c, m)
        if not monos:
            continue
        columns = [_constraint_terms({mono: 1}, n, 1, 1) for mono in monos]
        for vec in linalg.kernel(columns, len(monos)):
            rows.append({mono: v for mono, v in zip(monos, vec) if v})
    return rows


def _inv_harmonic(n: int, m: int) -> list[dict]:
    k1 = harmonic_first_kernel(n, m)
    if m <= 1 or not k1:
        return k1
    columns = []
    for row in k1:
        col: dict = {}
        for r in range(2, m + 1):
            for mono, v in _constraint_terms(row, n, 1, r).items():
                col[(r,) + mono] = v
        columns.append(col)
    ker = linalg.kernel(columns, len(k1))
    return _combine_rows(k1, ker)


def _cached(key: SpaceKey, build) -> SubspaceBasis:
    doc = cache.load(key.tag)
    if doc is not None:
        try:
            return SubspaceBasis.from_json(doc, key)
        except (KeyError, ValueError) as exc:
            log.warning("discarding cache entry %s: %s", key.tag, exc)
    log.info("computing %s", key.tag)
    basis = build()
    cache.store(key.tag, basis.to_json())
    return basis


def inv_space(n: int, d: int, m: int, method: str = "default") -> SubspaceBasis:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "harmonic" and d != 1:
        raise ValueError("the harmonic method is only available for d = 1")
    key = SpaceKey("inv", n, d, m, method)
    if m == 0:
        return SubspaceBasis(key, n, d, [_unit(n, d)])
    bound = top_order_bound(n, d)
    if bound is not None and m > bound:
        return SubspaceBasis(key, n, d, [])

    def build() -> SubspaceBasis:
        # past the middle order the space is usually zero, which a modular
        # certificate proves far more cheaply than an exact kernel
        if d == 1 and 2 * m > comb(n, 2) and certify_vanishing(n, m):
            return SubspaceBasis(key, n, d, [])
        if method == "harmonic":
            vectors = _inv_harmonic(n, m)
        else:
            vectors = _inv_graph(n, d, m)
        return SubspaceBasis.from_vectors(key, n, d, vectors)

    return _cached(key, build)


# ---------------------------------------------------------------- SC

def sc_space(n: int, d: int, m: int) -> SubspaceBasis:
    key = SpaceKey("sc", n, d, m)
    if m >= n:
        return SubspaceBasis(key, n, d, [])

    def build() -> SubspaceBasis:
        vectors = [formal_to_terms(poisson_formal(P), n, d) for P in poisson_basis(n, m)]
        return SubspaceBasis.from_vectors(key, n, d, vectors)

    return _cached(key, build)


# ---------------------------------------------------------------- Quant

def _relabel_formal(base: Mapping, sigma: Sequence[int]) -> dict:
    out: dict = {}
    for edges, c in base.items():
        sign = c
        new = []
        for a, b in edges:
            x, y = sigma[a - 1], sigma[b - 1]
            if x > y:
                x, y = y, x
                sign = -sign
            new.append((x, y))
        key = tuple(sorted(new))
        w = out.get(key, 0) + sign
        if w:
            out[key] = w
        else:
            out.pop(key, None)
    return out


def _quant_all(n: int, d: int, m_max: int | None = None) -> dict[int, list[dict]]:
    """Generators of Quant_n(V)_{2m} for every m (or m <= m_max)."""
    perms = list(permutations(range(1, n + 1)))
    # current kernel: coefficient vectors over perms
    current = [[int(i == j) for j in range(len(perms))] for i in range(len(perms))]
    out: dict[int, list[dict]] = {}
    m = 0
    bound = top_order_bound(n, d)
    while current and (m_max is None or m <= m_max):
        if bound is not None and m > bound:
            raise ArithmeticError("Moyal kernel survives past the top order")
        coords = SpanCoordinates(n, d, m)
        base = edge_power_formal(n, m)
        cols = [coords.of_formal(_relabel_formal(base, s)) for s in perms]
        images = []
        for vec in current:
            img: dict = {}
            for c, col in zip(vec, cols):
                if c:
                    for p, v in col.items():
                        w = img.get(p, 0) + c * v
                        if w:
                            img[p] = w
                        else:
                            img.pop(p, None)
            images.append(img)
        out[m] = [coords.embed(img) for img in images if img]
        ker = linalg.kernel(images, len(current))
        current = [_primitive_combo(current, k) for k in ker]
        m += 1
    return out


def _primitive_combo(vectors: Sequence[Sequence[int]], coeffs: Sequence[int]) -> list[int]:
    size = len(vectors[0])
    out = [0] * size
    for vec, c in zip(vectors, coeffs):
        if c:
            for i, v in enumerate(vec):
                if v:
                    out[i] += c * v
    return linalg._primitive(out)


@lru_cache(maxsize=16)
def _quant_generators(n: int, d: int) -> dict:
    return _quant_all(n, d)


def quant_space(n: int, d: int, m: int) -> SubspaceBasis:
    key = SpaceKey("quant", n, d, m)
    if m == 0:
        return SubspaceBasis(key, n, d, [_unit(n, d)])
    bound = top_order_bound(n, d)
    if bound is not None and m > bound:
        return SubspaceBasis(key, n, d, [])

    def build() -> SubspaceBasis:
        return SubspaceBasis.from_vectors(key, n, d, _quant_generators(n, d).get(m, []))

    return _cached(key, build)


def quant_spaces(n: int, d: int) -> list[SubspaceBasis]:
    """Quant_n(V)_{2m} for m = 0, 1, ... up to the last nonzero piece."""
    out = []
    m = 0
    total = 0
    while total < factorial(n):
        b = quant_space(n, d, m)
        out.append(b)
        total += b.dim
        m += 1
        if m > 2 * n * n:
            raise ArithmeticError("Moyal kernel does not terminate")
    return out


def space(kind: str, n: int, d: int, m: int, method: str = "default") -> SubspaceBasis:
    if kind == "inv":
        return inv_space(n, d, m, method)
    if kind == "sc":
        return sc_space(n, d, m)
    if kind == "quant":
        return quant_space(n, d, m)
    raise ValueError(f"unknown space kind {kind!r}")


def max_order(kind: str, n: int, d: int) -> int:
    """An upper bound for the largest m with a nonzero piece."""
    if kind == "sc":
        return n - 1
    if n <= 2 * d + 1:
        # every S_{n+1}-irreducible has height <= n <= dim V + 1, where Inv = SC
        return n - 1
    if d == 1:
        return comb(n, 2)
    return n * (n - 1)


# ---------------------------------------------------------------- group actions

GROUPS = ("n", "n+1")


def _group_size(b: SubspaceBasis, group: str) -> int:
    if group == "n":
        return b.n
    if group == "n+1":
        return b.n + 1
    raise ValueError(f"group must be 'n' or 'n+1', got {group!r}")


def _act(b: SubspaceBasis, perm: Sequence[int], row: Mapping) -> dict:
    return snp1_terms(perm, row, b.n, b.d)


def _extend(perm: Sequence[int], n: int) -> tuple:
    return tuple(perm) + tuple(range(len(perm) + 1, n + 2))


def check_stability(b: SubspaceBasis, group: str = "n+1", exhaustive: bool | None = None, seed: int = 0) -> None:
    """Raise ModelError unless every simple transposition maps the span into itself.

    Large spaces are tested on random combinations of the basis instead of row
    by row; a failure on a random combination is still a proof of instability.
    """
    N = _group_size(b, group)
    if not b.rows:
        return
    if exhaustive is None:
        work = b.dim * sum(len(r) for r in b.rows)
        exhaustive = work <= 3_000_000
    if exhaustive:
        tests = b.rows
    else:
        rng = random.Random(seed)
        tests = [linalg.combine(b.rows, [rng.randint(-99, 99) for _ in b.rows]) for _ in range(2)]
    for i in range(1, N):
        perm = _extend(simple_transposition(N, i), b.n)
        for row in tests:
            if not b.contains(_act(b, perm, row)):
                raise ModelError(f"{b.key}: not stable under the transposition ({i} {i + 1})")


def class_trace(b: SubspaceBasis, perm: Sequence[int]) -> Fraction:
    perm = _extend(perm, b.n)
    total = 0
    for row, p in zip(b.rows, b.pivots):
        total += snp1_coefficient(perm, row, p, b.n, b.d)
    return Fraction(total)


def character(b: SubspaceBasis, group: str = "n+1", check: bool = True) -> ClassFunction:
    N = _group_size(b, group)
    if check and group == "n+1":
        check_stability(b, group)
    values = {}
    for mu in partitions(N):
        perm = tuple(x + 1 for x in representative(mu))
        values[mu] = class_trace(b, perm)
    return ClassFunction(N, values)


@dataclass
class GradedCharacter:
    group: str
    N: int
    traces: dict = field(default_factory=dict)

    def dims(self) -> dict[int, int]:
        return {m: int(ch.degree()) for m, ch in self.traces.items()}

    def total(self) -> ClassFunction:
        out = ClassFunction(self.N, {})
        for ch in self.traces.values():
            out = out + ch
        return out

    def to_json(self) -> dict:
        return {"group": self.group, "N": self.N, "traces": {str(m): ch.to_json() for m, ch in self.traces.items()}}


def graded_character(bases: SubspaceBasis | Sequence[SubspaceBasis], group: str = "n+1") -> GradedCharacter:
    if isinstance(bases, SubspaceBasis):
        bases = [bases]
    N = _group_size(bases[0], group)
    out = GradedCharacter(group, N)
    for b in bases:
        m = b.key.m if isinstance(b.key, SpaceKey) else len(out.traces)
        out.traces[m] = character(b, group)
    return out


def decompose(b: SubspaceBasis, group: str = "n+1") -> dict[Partition, int]:
    """Multiplicities of irreducibles (full partitions) in a space."""
    ch = character(b, group)
    mults = as_integer_multiplicities(ch.decompose())
    from .characters import dimension

    if sum(c * dimension(lam) for lam, c in mults.items()) != b.dim:
        raise ArithmeticError("decomposition does not account for the dimension")
    return mults


# ---------------------------------------------------------------- pointed spaces

@dataclass
class PointedSpace:
    k: int
    d: int
    weight: int
    order: int
    basis: SubspaceBasis

    @property
    def x_degree(self) -> int:
        return (self.order - self.weight) // 2

    @property
    def dim(self) -> int:
        return self.basis.dim


def _restrict_terms(row: Mapping, n: int, d: int, k: int, ell: int) -> dict:
    w = 2 * d
    pattern = []
    for i in range(n - k):
        slot = [0] * w
        if i < ell:
            slot[var_index(d, 1, ETA, 1)] = 1
        pattern.extend(slot)
    pattern = tuple(pattern)
    cut = (n - k) * w
    out: dict = {}
    for mono, c in row.items():
        if mono[:cut] == pattern:
            rest = mono[cut:]
            out[rest] = out.get(rest, 0) + c
    return {mono: c for mono, c in out.items() if c}


def pointed_restrict(n: int, d: int, k: int, ell: int, m: int, method: str = "default") -> PointedSpace:
    """Restrict Inv_n(V)_{2m} to inputs (y_1)^ell x 1^(n-k-ell) x O^k.

    The result lives on k slots, has weight ell and order 2m - ell.
    """
    if n < k + ell:
        raise ValueError(f"need n >= k + ell, got n={n}, k={k}, ell={ell}")
    source = inv_space(n, d, m, method)
    vectors = [_restrict_terms(r, n, d, k, ell) for r in source.rows]
    key = PointedKey(k, d, ell, 2 * m - ell, n)
    return PointedSpace(k, d, ell, 2 * m - ell, SubspaceBasis.from_vectors(key, k, d, vectors))


def pointed_harmonic(k: int, weight: int, order: int) -> PointedSpace:
    """Direct description for d = 1: the kernel of sum_i xi_i (d/deta_i)^s, s >= 1.

    Monomials have xi-degree (order + weight)/2 and eta-degree (order - weight)/2.
    """
    if (order + weight) % 2:
        raise ValueError("order and weight must have the same parity")
    if weight < 0 or weight > order:
        raise ValueError("need 0 <= weight <= order")
    a_deg, x_deg = (order + weight) // 2, (order - weight) // 2
    key = PointedKey(k, 1, weight, order)
    monos = []
    for alpha in _compositions(a_deg, k) if k else [()]:
        for beta in _compositions(x_deg, k) if k else [()]:
            monos.append(tuple(v for i in range(k) for v in (alpha[i], beta[i])))
    if not monos or (k == 0 and (a_deg or x_deg)):
        return PointedSpace(k, 1, weight, order, SubspaceBasis(key, k, 1, []))
    columns = []
    for mono in monos:
        col: dict = {}
        for s in range(1, x_deg + 1):
            for out_mono, v in _swap_constraint({mono: 1}, k, s).items():
                col[(s,) + out_mono] = v
        columns.append(col)
    ker = linalg.kernel(columns, len(monos))
    vectors = [{mono: v for mono, v in zip(monos, vec) if v} for vec in ker]
    return PointedSpace(k, 1, weight, order, SubspaceBasis.from_vectors(key, k, 1, vectors))


def _swap_constraint(terms: Mapping, k: int, s: int) -> dict:
    # sum_i xi_i (d/deta_i)^s for d = 1
    out: dict = {}
    for mono, c in terms.items():
        for i in range(k):
            e = mono[2 * i + 1]
            if e < s:
                continue
            falling = 1
            for j in range(s):
                falling *= e - j
            new = list(mono)
            new[2 * i + 1] -= s
            new[2 * i] += 1
            key = tuple(new)
            out[key] = out.get(key, 0) + c * falling
    return {mono: c for mono, c in out.items() if c}


def generic_rank(k: int, x_deg: int, window: int = 10) -> int:
    """Rank over the polynomial ring in k variables of the x-degree piece (d = 1).

    The dimensions h(w) over weights w = 0..window are turned into
    (1 - z)^k sum_w h(w) z^w; the tail of the window must vanish, and the
    value of the numerator at z = 1 is the rank.
    """
    dims = [pointed_harmonic(k, w, 2 * x_deg + w).dim for w in range(window + 1)]
    num = list(dims)
    for _ in range(k):
        num = [num[0]] + [num[i] - num[i - 1] for i in range(1, len(num))]
    tail = num[window // 2 + 1:]
    if any(tail):
        raise ArithmeticError(f"weight window {window} too short to certify the numerator: {num}")
    return sum(num)
