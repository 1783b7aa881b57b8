"""Symbols of constant-coefficient polydifferential operators on a symplectic space.

A symbol on ``n`` slots over ``V = C^{2d}`` is a polynomial in the variables
``xi[i,k]`` (the derivative d/dx_k applied to the i-th argument) and
``eta[i,k]`` (d/dy_k on the i-th argument).  Monomials are dense exponent
tuples of length ``2 n d``; the variable ``(i, kind, k)`` with kind 0 for xi
and 1 for eta sits at position ``(i-1)*2d + kind*d + (k-1)``.  Comparing
tuples lexicographically gives the global monomial order (slot-major, xi
before eta), and the largest monomial of a row is its echelon pivot.

Coefficients are ``int`` when integral and ``Fraction`` otherwise.  The raw
helpers in this module act on plain ``dict`` term maps for speed; the
``SymbolPoly`` class wraps them with ``n`` and ``d``.
"""
from __future__ import annotations

import json
import re
import warnings
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Mono = tuple
Terms = dict

XI, ETA = 0, 1


def var_index(d: int, i: int, kind: int, k: int) -> int:
    return (i - 1) * 2 * d + kind * d + (k - 1)


def normalize_coeff(c) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def add_into(target: Terms, source: Mapping, scale: Coeff = 1) -> Terms:
    """target += scale * source, dropping zeros."""
    for mono, c in source.items():
        v = target.get(mono, 0) + scale * c
        if v:
            target[mono] = v
        else:
            target.pop(mono, None)
    return target


def mul_terms(a: Mapping, b: Mapping) -> Terms:
    out: Terms = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(mono, 0) + ca * cb
            if v:
                out[mono] = v
            else:
                del out[mono]
    return out


class SymbolPoly:
    """An immutable sparse polynomial in the symbols xi[i,k], eta[i,k]."""

    __slots__ = ("n", "d", "terms")

    def __init__(self, n: int, d: int, terms: Mapping | None = None):
        self.n = n
        self.d = d
        size = 2 * n * d
        clean: Terms = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != size:
                raise ValueError(f"monomial length {len(mono)} != {size}")
            c = normalize_coeff(Fraction(c) if not isinstance(c, int) else c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {m: normalize_coeff(c) for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, n: int, d: int, terms: Terms) -> "SymbolPoly":
        obj = cls.__new__(cls)
        obj.n, obj.d, obj.terms = n, d, terms
        return obj

    @classmethod
    def one(cls, n: int, d: int) -> "SymbolPoly":
        return cls._raw(n, d, {(0,) * (2 * n * d): 1})

    @classmethod
    def zero(cls, n: int, d: int) -> "SymbolPoly":
        return cls._raw(n, d, {})

    @classmethod
    def variable(cls, n: int, d: int, i: int, kind: int, k: int = 1) -> "SymbolPoly":
        mono = [0] * (2 * n * d)
        mono[var_index(d, i, kind, k)] = 1
        return cls._raw(n, d, {tuple(mono): 1})

    def _check(self, other: "SymbolPoly") -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("slot or dimension mismatch")

    def __add__(self, other: "SymbolPoly") -> "SymbolPoly":
        self._check(other)
        return SymbolPoly._raw(self.n, self.d, add_into(dict(self.terms), other.terms))

    def __sub__(self, other: "SymbolPoly") -> "SymbolPoly":
        self._check(other)
        return SymbolPoly._raw(self.n, self.d, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self) -> "SymbolPoly":
        return self.scale(-1)

    def __mul__(self, other) -> "SymbolPoly":
        if isinstance(other, SymbolPoly):
            self._check(other)
            return SymbolPoly._raw(self.n, self.d, mul_terms(self.terms, other.terms))
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SymbolPoly":
        out = SymbolPoly.one(self.n, self.d)
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c) -> "SymbolPoly":
        c = normalize_coeff(Fraction(c)) if not isinstance(c, int) else c
        if not c:
            return SymbolPoly.zero(self.n, self.d)
        return SymbolPoly._raw(self.n, self.d, {m: normalize_coeff(v * c) for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolPoly) and (self.n, self.d) == (other.n, other.d) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.d, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"SymbolPoly(n={self.n}, d={self.d}, {to_text(self)})"

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    def coefficient(self, mono: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(mono), 0)

    def permute_slots(self, perm: Sequence[int]) -> "SymbolPoly":
        """Move slot i to slot perm[i-1] (perm is one-line notation on 1..n)."""
        return SymbolPoly._raw(self.n, self.d, permute_slot_terms(self.terms, perm, self.d))

    def to_json(self) -> list:
        return poly_to_json(self)


# ---------------------------------------------------------------- text and JSON

def _var_name(d: int, index: int) -> str:
    slot, rest = divmod(index, 2 * d)
    kind, k = divmod(rest, d)
    return f"{'xi' if kind == XI else 'eta'}[{slot + 1},{k + 1}]"


def monomial_to_string(mono: Sequence[int], d: int) -> str:
    parts = []
    for idx, e in enumerate(mono):
        if e:
            parts.append(_var_name(d, idx) + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) if parts else "1"


_VAR_RE = re.compile(r"(xi|eta)\[(\d+),(\d+)\](?:\^(\d+))?")


def monomial_from_string(text: str, n: int, d: int) -> tuple[int, ...]:
    mono = [0] * (2 * n * d)
    if text.strip() == "1":
        return tuple(mono)
    for factor in text.split("*"):
        match = _VAR_RE.fullmatch(factor.strip())
        if not match:
            raise ValueError(f"bad monomial factor {factor!r}")
        kind = XI if match.group(1) == "xi" else ETA
        i, k = int(match.group(2)), int(match.group(3))
        if not (1 <= i <= n and 1 <= k <= d):
            raise ValueError(f"variable out of range: {factor}")
        mono[var_index(d, i, kind, k)] += int(match.group(4) or 1)
    return tuple(mono)


def _coeff_str(c: Coeff) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def to_text(p: SymbolPoly) -> str:
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), reverse=True)
    return " + ".join(f"({c})*{monomial_to_string(m, p.d)}" for m, c in items)


def poly_to_json(p: SymbolPoly) -> list:
    return [[monomial_to_string(m, p.d), _coeff_str(c)] for m, c in sorted(p.terms.items(), reverse=True)]


def poly_from_json(data: Sequence | str, n: int, d: int) -> SymbolPoly:
    if isinstance(data, str):
        data = json.loads(data)
    return SymbolPoly(n, d, {monomial_from_string(m, n, d): Fraction(c) for m, c in data})


# ---------------------------------------------------------------- slot permutations

def permute_slot_terms(terms: Mapping, perm: Sequence[int], d: int) -> Terms:
    n = len(perm)
    w = 2 * d
    # new slot perm[i] receives old slot i
    source = [0] * n
    for i, target in enumerate(perm):
        source[target - 1] = i
    out: Terms = {}
    for mono, c in terms.items():
        new = tuple(x for j in range(n) for x in mono[source[j] * w:(source[j] + 1) * w])
        out[new] = c
    return out


# ---------------------------------------------------------------- bivectors and graphs

def bivector_terms(i: int, j: int, d: int, n: int) -> Terms:
    out: Terms = {}
    size = 2 * n * d
    for k in range(1, d + 1):
        m1 = [0] * size
        m1[var_index(d, i, XI, k)] += 1
        m1[var_index(d, j, ETA, k)] += 1
        m2 = [0] * size
        m2[var_index(d, i, ETA, k)] += 1
        m2[var_index(d, j, XI, k)] += 1
        add_into(out, {tuple(m1): 1})
        add_into(out, {tuple(m2): -1})
    return out


def bivector(i: int, j: int, d: int, n: int) -> SymbolPoly:
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("slot out of range")
    if i == j:
        warnings.warn("bivector with equal slots is zero", stacklevel=2)
        return SymbolPoly.zero(n, d)
    return SymbolPoly._raw(n, d, bivector_terms(i, j, d, n))


class Multigraph:
    """A loopless multigraph on vertices 1..n; edges are stored as sorted pairs."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        normal = []
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError("vertex out of range")
            normal.append((min(a, b), max(a, b)))
        self.n = n
        self.edges = tuple(sorted(normal))

    def __eq__(self, other) -> bool:
        return isinstance(other, Multigraph) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Multigraph({self.n}, {list(self.edges)})"

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a - 1] += 1
            deg[b - 1] += 1
        return tuple(deg)

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        return Multigraph(self.n, [(perm[a - 1], perm[b - 1]) for a, b in self.edges])


def all_edges(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


def multigraphs(n: int, m: int) -> Iterator[Multigraph]:
    """All loopless multigraphs with m edges on n vertices."""
    from itertools import combinations_with_replacement

    for edges in combinations_with_replacement(all_edges(n), m):
        yield Multigraph(n, edges)


@lru_cache(maxsize=200000)
def _graph_terms(n: int, d: int, edges: tuple) -> Terms:
    if not edges:
        return {(0,) * (2 * n * d): 1}
    rest = _graph_terms(n, d, edges[:-1])
    return mul_terms(rest, bivector_terms(edges[-1][0], edges[-1][1], d, n))


def graph_terms(n: int, d: int, edges: tuple) -> Terms:
    """Terms of the product of pi^{a,b} over the sorted edge tuple (read only)."""
    return _graph_terms(n, d, edges)


def graph_symbol(G: Multigraph, d: int) -> SymbolPoly:
    return SymbolPoly._raw(G.n, d, dict(_graph_terms(G.n, d, G.edges)))


# ---------------------------------------------------------------- formal edge polynomials
#
# A formal edge polynomial is a dict from sorted edge tuples to coefficients,
# standing for a polynomial in the commuting letters pi^{a,b} (a < b).

def formal_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(sorted(ea + eb))
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def formal_edge(a: int, b: int) -> dict:
    if a == b:
        return {}
    return {((a, b),): 1} if a < b else {((b, a),): -1}


def formal_to_terms(formal: Mapping, n: int, d: int) -> Terms:
    out: Terms = {}
    for edges, c in formal.items():
        add_into(out, graph_terms(n, d, edges), c)
    return out


# ---------------------------------------------------------------- Poisson monomials

Tree = Union[int, tuple]


def tree_leaves(tree: Tree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return tree_leaves(tree[0]) + tree_leaves(tree[1])


class PoissonMonomial:
    """A product of iterated brackets: one binary tree per block of a set partition."""

    __slots__ = ("n", "trees")

    def __init__(self, n: int, trees: Iterable[Tree]):
        self.n = n
        self.trees = tuple(trees)
        leaves = sorted(x for t in self.trees for x in tree_leaves(t))
        if leaves != list(range(1, n + 1)):
            raise ValueError("blocks must partition 1..n")
        for t in self.trees:
            _check_tree(t)

    @property
    def brackets(self) -> int:
        return sum(len(tree_leaves(t)) - 1 for t in self.trees)

    def blocks(self) -> list[list[int]]:
        return [sorted(tree_leaves(t)) for t in self.trees]

    def __repr__(self) -> str:
        return "PoissonMonomial(" + " ".join(_tree_str(t) for t in self.trees) + ")"


def _check_tree(t: Tree) -> None:
    if isinstance(t, int):
        return
    if not (isinstance(t, tuple) and len(t) == 2):
        raise ValueError(f"bad bracket tree {t!r}")
    _check_tree(t[0])
    _check_tree(t[1])


def _tree_str(t: Tree) -> str:
    if isinstance(t, int):
        return f"f{t}"
    return "{" + _tree_str(t[0]) + "," + _tree_str(t[1]) + "}"


def tree_formal(t: Tree) -> dict:
    """Formal edge polynomial of a bracket tree; the left subtree takes the first slot."""
    if isinstance(t, int):
        return {(): 1}
    left, right = tree_formal(t[0]), tree_formal(t[1])
    link: dict = {}
    for a in tree_leaves(t[0]):
        for b in tree_leaves(t[1]):
            for key, c in formal_edge(a, b).items():
                link[key] = link.get(key, 0) + c
    return formal_mul(formal_mul(left, right), link)


def poisson_formal(P: PoissonMonomial) -> dict:
    out: dict = {(): 1}
    for t in P.trees:
        out = formal_mul(out, tree_formal(t))
    return out


def poisson_symbol(P: PoissonMonomial, d: int) -> SymbolPoly:
    return SymbolPoly._raw(P.n, d, formal_to_terms(poisson_formal(P), P.n, d))


def set_partitions(elements: Sequence[int]) -> Iterator[list[list[int]]]:
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _right_normed(order: Sequence[int]) -> Tree:
    tree: Tree = order[-1]
    for x in reversed(order[:-1]):
        tree = (x, tree)
    return tree


def poisson_basis(n: int, m: int | None = None) -> Iterator[PoissonMonomial]:
    """Set partitions with right-normed brackets ending in each block's maximum.

    These n! monomials form a basis of the multilinear part of the free Poisson
    algebra on n letters; with ``m`` given only those with m brackets are kept.
    """
    for blocks in set_partitions(list(range(1, n + 1))):
        blocks = sorted(sorted(b) for b in blocks)
        if m is not None and n - len(blocks) != m:
            continue
        choices = []
        for b in blocks:
            choices.append([_right_normed(list(p) + [b[-1]]) for p in permutations(b[:-1])])
        for trees in product(*choices):
            yield PoissonMonomial(n, trees)


def _all_trees(leaves: Sequence[int]) -> Iterator[Tree]:
    if len(leaves) == 1:
        yield leaves[0]
        return
    first, rest = leaves[0], leaves[1:]
    # split into two nonempty ordered parts
    for mask in range(1, 2 ** len(rest) + 1):
        left = [first] + [x for i, x in enumerate(rest) if mask >> i & 1]
        right = [x for i, x in enumerate(rest) if not mask >> i & 1]
        if not right:
            continue
        for lt in _all_trees(left):
            for rt in _all_trees(right):
                yield (lt, rt)
                yield (rt, lt)


def all_poisson_monomials(n: int, m: int) -> Iterator[PoissonMonomial]:
    """Every bracket tree shape and orientation (redundant; for small cross-checks)."""
    for blocks in set_partitions(list(range(1, n + 1))):
        if n - len(blocks) != m:
            continue
        for trees in product(*(list(_all_trees(sorted(b))) for b in blocks)):
            yield PoissonMonomial(n, trees)


# ---------------------------------------------------------------- Moyal expansion

def moyal_formal(sigma: Sequence[int], m: int) -> dict:
    """Formal edge polynomial of (sum_{p<q} pi^{sigma(p),sigma(q)})^m / (m! 2^m)."""
    n = len(sigma)
    base: dict = {}
    for p, q in combinations(range(n), 2):
        for key, c in formal_edge(sigma[p], sigma[q]).items():
            base[key] = base.get(key, 0) + c
    out: dict = {(): 1}
    for _ in range(m):
        out = formal_mul(out, base)
    scale = Fraction(1, factorial(m) * 2**m)
    return {k: normalize_coeff(c * scale) for k, c in out.items()}


def moyal_coefficient(sigma: Sequence[int], m: int, d: int) -> SymbolPoly:
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of 1..n")
    return SymbolPoly._raw(n, d, formal_to_terms(moyal_formal(sigma, m), n, d))


def edge_power_formal(n: int, m: int) -> dict:
    """(sum_{a<b} pi^{a,b})^m as a formal edge polynomial with multinomial coefficients."""
    from itertools import combinations_with_replacement
    from collections import Counter

    out = {}
    for edges in combinations_with_replacement(all_edges(n), m):
        mult = factorial(m)
        for c in Counter(edges).values():
            mult //= factorial(c)
        out[edges] = mult
    return out


# ---------------------------------------------------------------- constraint operators

def _constraint_terms(terms: Mapping, n: int, d: int, r: int) -> Terms:
    # sum_i eta[i,1] (d/dxi[i,1])^r
    out: Terms = {}
    for mono, c in terms.items():
        for i in range(1, n + 1):
            x = var_index(d, i, XI, 1)
            e = mono[x]
            if e < r:
                continue
            falling = 1
            for j in range(r):
                falling *= e - j
            new = list(mono)
            new[x] -= r
            new[var_index(d, i, ETA, 1)] += 1
            key = tuple(new)
            v = out.get(key, 0) + c * falling
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def cubic_constraint(p: SymbolPoly) -> SymbolPoly:
    return SymbolPoly._raw(p.n, p.d, _constraint_terms(p.terms, p.n, p.d, 2))


def harmonic_constraints(p: SymbolPoly, r: int) -> SymbolPoly:
    if p.d != 1:
        raise ValueError("harmonic constraints require d = 1")
    if r < 1:
        raise ValueError("r must be >= 1")
    return SymbolPoly._raw(p.n, p.d, _constraint_terms(p.terms, p.n, p.d, r))


# ---------------------------------------------------------------- the S_{n+1} action

@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple:
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _neg_sum_power(total: int, parts: int) -> tuple:
    # (-(x_1 + ... + x_parts))^total as (exponents, coefficient) pairs
    sign = -1 if total % 2 else 1
    out = []
    for comp in _compositions(total, parts):
        coef = factorial(total)
        for e in comp:
            coef //= factorial(e)
        out.append((comp, sign * coef))
    return tuple(out)


def _lifted(mono: Sequence[int], perm: Sequence[int], n: int, w: int) -> list[list[int]]:
    # slots 1..n+1 after moving slot i to perm[i-1]; slot n+1 of the input is empty
    slots = [[0] * w for _ in range(n + 1)]
    for i in range(n):
        slots[perm[i] - 1] = list(mono[i * w:(i + 1) * w])
    return slots


def snp1_terms(perm: Sequence[int], terms: Mapping, n: int, d: int) -> Terms:
    w = 2 * d
    if perm[n] == n + 1:
        return permute_slot_terms(terms, perm[:n], d)
    out: Terms = {}
    for mono, c in terms.items():
        slots = _lifted(mono, perm, n, w)
        last = slots[n]
        base = [x for s in slots[:n] for x in s]
        expansions: list = [((), 1)]
        for v in range(w):
            if last[v]:
                expansions = [(prev + ((v, comp),), pc * cc) for prev, pc in expansions
                              for comp, cc in _neg_sum_power(last[v], n)]
        for parts, coef in expansions:
            new = list(base)
            for v, comp in parts:
                for i, e in enumerate(comp):
                    new[i * w + v] += e
            key = tuple(new)
            val = out.get(key, 0) + c * coef
            if val:
                out[key] = val
            else:
                del out[key]
    return out


def snp1_action(perm: Sequence[int], p: SymbolPoly) -> SymbolPoly:
    """Act by a permutation of 1..n+1 (one-line notation) on an n-slot symbol."""
    if len(perm) != p.n + 1 or sorted(perm) != list(range(1, p.n + 2)):
        raise ValueError(f"expected a permutation of 1..{p.n + 1}")
    return SymbolPoly._raw(p.n, p.d, snp1_terms(perm, p.terms, p.n, p.d))


def snp1_coefficient(perm: Sequence[int], terms: Mapping, target: Sequence[int], n: int, d: int) -> Coeff:
    """Coefficient of the monomial ``target`` in the image of ``terms`` under ``perm``."""
    w = 2 * d
    if perm[n] == n + 1:
        # old slot i is found at new slot perm[i]
        pre = tuple(x for i in range(n) for x in target[(perm[i] - 1) * w:perm[i] * w])
        return terms.get(pre, 0)
    total = 0
    for mono, c in terms.items():
        slots = _lifted(mono, perm, n, w)
        last = slots[n]
        coef = c
        for v in range(w):
            need = 0
            denom = 1
            for i in range(n):
                rem = target[i * w + v] - slots[i][v]
                if rem < 0:
                    break
                need += rem
                denom *= factorial(rem)
            else:
                if need == last[v]:
                    coef *= (-1) ** need * (factorial(need) // denom)
                    continue
            coef = 0
            break
        if coef:
            total += coef
    return normalize_coeff(total)


def compose_perms(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """(a o b)(i) = a(b(i)) in one-line notation on 1..N."""
    return tuple(a[x - 1] for x in b)


def simple_transposition(N: int, i: int) -> tuple[int, ...]:
    perm = list(range(1, N + 1))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)
