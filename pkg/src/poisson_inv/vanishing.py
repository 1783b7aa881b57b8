"""Modular certificates that Inv_n(C^2)_{2m} vanishes.

Inv_n(C^2)_{2m} is the joint kernel, inside the bidegree (m, m) slice, of

    M = sum_i eta_i d/dxi_i        and        C = sum_i eta_i (d/dxi_i)^2.

Both operators commute with slot permutations.  If the space is nonzero it
contains an irreducible rho_mu of S_n.  For every mu we pick a Young subgroup
with a character (trivial or sign on each block) occurring in the restriction
of rho_mu, preferring large groups; the space vanishes as soon as all the
corresponding equivariant parts of the kernel do.

Equivariant vectors are determined by their values on canonical monomials
(slot data sorted inside each block of the Young subgroup), which cuts the
unknowns by the group order.  The equations are solved over F_p: a nonzero
rational solution scaled to a primitive integer vector stays a nonzero
solution mod p, so a zero kernel mod p proves a zero kernel over Q.
"""
from __future__ import annotations

import logging
import random
from functools import lru_cache
from math import factorial, prod

import flint

from .combinat import partitions
from .polydiff import _compositions

log = logging.getLogger(__name__)

PRIME = 2147483629  # below 2**31, keeps flint on its fast path


def _ranges(parts) -> list[tuple[int, int]]:
    out, start = [], 0
    for p in parts:
        out.append((start, start + p))
        start += p
    return out


def _young_character_multiplicity(mu, blocks) -> int:
    """Multiplicity of the (trivial or sign) block character in rho_mu restricted to a Young subgroup."""
    from itertools import product as cartesian

    from .characters import class_size, irreducible_character

    order = prod(factorial(b) for b, _ in blocks)
    total = 0
    for types in cartesian(*[list(partitions(b)) for b, _ in blocks]):
        size = prod(class_size(t) for t in types)
        value = 1
        for t, (b, sign) in zip(types, blocks):
            if sign and (b - len(t)) % 2:
                value = -value
        cycle = sorted((x for t in types for x in t), reverse=True)
        total += size * value * irreducible_character(mu, cycle)
    return total // order


def equivariance_groups(n: int) -> list[tuple[tuple[int, bool], ...]]:
    """Young subgroups with block characters that together detect every irreducible of S_n.

    Each entry lists (block size, sign flag) pairs; for every mu the largest
    group whose character occurs in rho_mu is kept.
    """
    candidates = []
    for a in range(n + 1):
        for alpha in partitions(a):
            for beta in partitions(n - a):
                blocks = tuple((x, False) for x in alpha) + tuple((x, True) for x in beta)
                candidates.append((prod(factorial(b) for b, _ in blocks), blocks))
    candidates.sort(key=lambda t: -t[0])
    chosen = []
    for mu in partitions(n):
        for _, blocks in candidates:
            if _young_character_multiplicity(mu, blocks) > 0:
                if blocks not in chosen:
                    chosen.append(blocks)
                break
    return chosen


class _Canon:
    """Canonical forms of d = 1 monomials under a Young subgroup of slot permutations."""

    def __init__(self, blocks):
        self.ranges = _ranges([b for b, _ in blocks])
        self.signs = [sign for _, sign in blocks]
        self.run_start = []
        for a, b in self.ranges:
            self.run_start.extend([True] + [False] * (b - a - 1))
        self.strict = [sign for (a, b), sign in zip(self.ranges, self.signs) for _ in range(a, b)]

    def __call__(self, pairs: list[tuple[int, int]]):
        # pairs[i] = (total degree, xi degree) of slot i; returns (sign, canonical pairs)
        out = []
        s = 1
        for (a, b), sign in zip(self.ranges, self.signs):
            seg = pairs[a:b]
            srt = sorted(seg, reverse=True)
            if sign:
                for x, y in zip(srt, srt[1:]):
                    if x == y:
                        return 0, None
                s *= _parity(seg)
            out.extend(srt)
        return s, tuple(out)


def _parity(seg) -> int:
    # sign of the permutation sorting seg into decreasing order (entries distinct)
    inv = 0
    for i in range(len(seg)):
        x = seg[i]
        for y in seg[i + 1:]:
            if x < y:
                inv += 1
    return -1 if inv % 2 else 1


def _canonical_blocks(n: int, total: int, ranges) -> list[tuple[int, ...]]:
    out = []
    for c in _compositions(total, n):
        if all(list(c[a:b]) == sorted(c[a:b], reverse=True) for a, b in ranges):
            out.append(c)
    return out


def _block_monomials(c, xi_total: int, canon: _Canon) -> list[tuple]:
    """Canonical monomials (as pair tuples) with slot degrees c and xi-degree xi_total."""
    out = []
    n = len(c)
    # slot i must not exceed slot i - 1 when both carry the same degree inside one block
    tied = [not canon.run_start[i] and c[i] == c[i - 1] for i in range(n)]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + c[i]

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple((c[j], acc[j]) for j in range(n)))
            return
        hi = min(c[i], left)
        if tied[i]:
            hi = min(hi, acc[-1] - 1 if canon.strict[i] else acc[-1])
        lo = max(0, left - suffix[i + 1])
        for x in range(hi, lo - 1, -1):
            acc.append(x)
            rec(i + 1, left - x, acc)
            acc.pop()

    rec(0, xi_total, [])
    return out


def _preimages(q: tuple, r: int):
    # inputs of eta_i (d/dxi_i)^r landing on q, with the falling-factorial weight
    for i, (tot, xi) in enumerate(q):
        eta = tot - xi
        if eta < 1:
            continue
        new = list(q)
        new[i] = (tot + r - 1, xi + r)
        w = 1
        for j in range(r):
            w *= xi + r - j
        yield new, w


def _nullspace(rows: list[dict], cols: int, p: int) -> list[list[int]]:
    if cols == 0:
        return []
    if not rows:
        return [[int(i == j) for j in range(cols)] for i in range(cols)]
    flat = [0] * (len(rows) * cols)
    for r, row in enumerate(rows):
        base = r * cols
        for j, v in row.items():
            flat[base + j] = v % p
    X, nullity = flint.nmod_mat(len(rows), cols, flat, p).nullspace()
    if not nullity:
        return []
    vecs = X.transpose().tolist()[:nullity]
    return [[int(v) for v in vec] for vec in vecs]


def _compressed_rank(rows: list[dict], cols: int, p: int, seed: int, spread: int) -> int:
    """Rank mod p of a random sparse combination of ``rows``; never exceeds their rank."""
    rng = random.Random(seed)
    if len(rows) <= cols + 32:
        mixed = [[(r, 1)] for r in range(len(rows))]
    else:
        mixed = [[] for _ in range(cols + 32)]
        for r in range(len(rows)):
            for _ in range(spread):
                mixed[rng.randrange(len(mixed))].append((r, rng.getrandbits(30) + 1))
    flat = []
    for combo in mixed:
        line = [0] * cols
        for r, c in combo:
            for j, v in rows[r].items():
                line[j] += c * v
        flat.extend(line)
    return flint.nmod_mat(len(mixed), cols, [x % p for x in flat], p).rank()


def equivariant_kernel_bound(n: int, m: int, blocks, p: int = PRIME) -> int:
    """Upper bound for the block-character-equivariant part of Inv_n(C^2)_{2m}.

    ``blocks`` lists (size, sign flag) pairs of a Young subgroup.  A return
    value of zero proves that the equivariant part vanishes.
    """
    canon = _Canon(blocks)
    # kernel of M on each canonical block, in canonical coordinates
    columns: dict[tuple, list[tuple[int, int]]] = {}
    ncols = 0
    for c in _canonical_blocks(n, 2 * m, canon.ranges):
        unknowns = _block_monomials(c, m, canon)
        if not unknowns:
            continue
        index = {u: j for j, u in enumerate(unknowns)}
        rows = []
        for q in _block_monomials(c, m - 1, canon):
            row: dict = {}
            for pre, w in _preimages(q, 1):
                s, key = canon(pre)
                if s:
                    j = index[key]
                    row[j] = row.get(j, 0) + s * w
            if any(row.values()):
                rows.append(row)
        for vec in _nullspace(rows, len(unknowns), p):
            for j, v in enumerate(vec):
                if v:
                    columns.setdefault(unknowns[j], []).append((ncols, v))
            ncols += 1
    if ncols == 0:
        return 0
    # C on the kernel, read at canonical outputs
    rows = []
    for c in _canonical_blocks(n, 2 * m - 1, canon.ranges):
        for q in _block_monomials(c, m - 2, canon):
            row: dict = {}
            for pre, w in _preimages(q, 2):
                s, key = canon(pre)
                if s:
                    for j, v in columns.get(key, ()):
                        row[j] = row.get(j, 0) + s * w * v
            row = {j: v % p for j, v in row.items() if v % p}
            if row:
                rows.append(row)
    best = 0
    for attempt in range(3):
        best = max(best, _compressed_rank(rows, ncols, p, seed=attempt, spread=4 + 4 * attempt))
        if best == ncols:
            break
    return ncols - best


@lru_cache(maxsize=None)
def certify_vanishing(n: int, m: int, p: int = PRIME) -> bool:
    """True when Inv_n(C^2)_{2m} = 0 is proven; False means no conclusion."""
    if m < 2:
        return False
    for blocks in equivariance_groups(n):
        bound = equivariant_kernel_bound(n, m, blocks, p)
        log.info("vanishing certificate n=%d m=%d blocks=%s bound=%d", n, m, blocks, bound)
        if bound:
            return False
    return True
