"""Hilbert series of the numeric harmonic spaces Har_{n,a}.

Har_{n,a} is the space of polynomials phi(x_1..x_n) with

    sum_i a_i (d/dx_i)^r phi = 0    for all r >= 1.

Solutions are killed by the directional derivative along a, so they are
polynomials in the n - 1 variables y_j = a_n x_j - a_j x_n.  In these
coordinates the equations read D_r phi = 0 with

    D_r = sum_{j<n} a_j a_n^r d_j^r + a_n (-L)^r,   L = sum_{j<n} a_j d_j.

The space is closed under differentiation.  A degree-k polynomial is a
solution exactly when its gradient consists of degree-(k-1) solutions and the
scalar D_k phi vanishes (every D_r with r < k then gives a polynomial with zero
gradient and positive degree).  By Euler's identity every degree-k solution
lies in sum_j y_j Har_{k-1}.  This gives a recursion in which a solution is
stored by the coordinates of its gradient, so no polynomial is ever expanded.

Exactness.  The recursion runs over F_p.  Reducing the defining integer matrix
modulo p can only lower its rank, so the F_p dimensions bound the rational ones
from above.  For a lower bound the top-degree solution Delta is rebuilt over Q
from a few primes by rational reconstruction and checked exactly.  Its
derivatives are solutions, and the rank of each catalecticant matrix of
Delta over F_q bounds the rational dimension from below.  The dimensions are
returned only when the two bounds meet in every degree.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, factorial, gcd, isqrt, lcm, prod
from typing import Sequence

import flint

# primes below 2**62, far above any degree reached here
_PRIME_START = 1 << 62


class HarmonicError(ArithmeticError):
    """The upper and lower bounds did not meet."""


def _primes(start: int = _PRIME_START):
    x = start - 1
    while True:
        if flint.fmpz(x).is_prime():
            yield x
        x -= 2 if x % 2 else 1


def check_generic(a: Sequence) -> None:
    for size in range(1, len(a) + 1):
        for subset in combinations(a, size):
            if sum(subset) == 0:
                raise ValueError(f"degenerate coefficients: the subset {subset} sums to zero")


def _integral(a: Sequence) -> list[int]:
    # rescaling a rescales every D_r, leaving the solutions unchanged
    fr = [Fraction(v) for v in a]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    out = [int(v * den) for v in fr]
    g = 0
    for v in out:
        g = gcd(g, v)
    return [v // g for v in out] if g > 1 else out


def _nmod(rows: int, cols: int, flat: list, p: int):
    return flint.nmod_mat(rows, cols, flat, p)


def _rref(M) -> tuple[list[list[int]], list[int]]:
    R = M.rref()
    if isinstance(R, tuple):
        R = R[0]
    out, piv = [], []
    for row in R.tolist():
        row = [int(x) for x in row]
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            break
        out.append(row)
        piv.append(lead)
    return out, piv


def recursion_mod_p(n: int, a: Sequence[int], p: int, maxdeg: int) -> tuple[list[int], list[list[list[int]]]]:
    """Dimensions of Har_k over F_p for k <= maxdeg, and the gradient matrices.

    ``grads[k][r]`` holds the gradient of the r-th basis element of degree k:
    entry ``i * h_{k-1} + c`` is the coefficient of the c-th basis element of
    degree k - 1 in d/dy_i.
    """
    nv = n - 1
    if nv == 0:
        return [1] + [0] * maxdeg, [[[]]] + [[] for _ in range(maxdeg)]
    a = [x % p for x in a]
    an = a[-1]
    eye = [[int(i == j) for j in range(nv)] for i in range(nv)]
    dims = [1, nv]
    grads: list = [[[]], eye]
    h, hprev = nv, 1
    E = eye
    coords = eye          # candidate vector -> coordinates, valid on the kernel
    constraints: list = []
    # d_j^k and L^k of each basis element, both scalars
    phi = [[int(b == j) for b in range(nv)] for j in range(nv)]
    psi = list(a[:nv])
    for k in range(2, maxdeg + 1):
        if h == 0:
            dims.append(0)
            grads.append([])
            continue
        nc = nv * h
        # Z_i sends the candidate sum c_{jb} y_j e_b to the coefficients of
        # sum_j y_j d_i(sum_b c_{jb} e_b) in the previous candidate basis
        Zs = []
        for i in range(nv):
            flat = [0] * (nv * hprev * nc)
            base = i * hprev
            for b in range(h):
                row = E[b]
                for cp in range(hprev):
                    v = row[base + cp]
                    if v:
                        for j in range(nv):
                            flat[(j * hprev + cp) * nc + j * h + b] = v
            Zs.append(_nmod(nv * hprev, nc, flat, p))
        rows: list[int] = []
        if constraints:
            Bm = _nmod(len(constraints), nv * hprev, [x for r in constraints for x in r], p)
            for Zi in Zs:
                rows.extend(int(x) for x in (Bm * Zi).entries())
        # D_k (y_j e) = k a_j (a_n^k d_j^{k-1} e + (-1)^k a_n L^{k-1} e)
        sign = -1 if k % 2 else 1
        ank = pow(an, k, p)
        rows.extend((k * a[j] * (ank * phi[j][b] + sign * an * psi[b])) % p for j in range(nv) for b in range(h))
        constraints, piv = _rref(_nmod(len(rows) // nc, nc, rows, p))
        pivset = set(piv)
        free = [j for j in range(nc) if j not in pivset]
        if not free:
            dims.append(0)
            grads.append([])
            h, hprev, E = 0, h, []
            continue
        kernel = [[0] * len(free) for _ in range(nc)]
        for t, f in enumerate(free):
            kernel[f][t] = 1
            for r, pc in enumerate(piv):
                kernel[pc][t] = (-constraints[r][f]) % p
        Km = _nmod(nc, len(free), [x for r in kernel for x in r], p)
        Cm = _nmod(len(coords), len(coords[0]), [x for r in coords for x in r], p)
        G = []
        for l in range(nv):
            block = [[int(x) for x in r] for r in (Cm * Zs[l]).tolist()]
            for b in range(h):
                block[b][l * h + b] = (block[b][l * h + b] + 1) % p
            G.extend(block)
        img = (_nmod(nv * h, nc, [x for r in G for x in r], p) * Km).transpose()
        E_new, epiv = _rref(img)
        h_new = len(E_new)
        coords = [G[q] for q in epiv]
        phi = [[sum(E_new[r][j * h + b] * phi[j][b] for b in range(h)) % p for r in range(h_new)] for j in range(nv)]
        psi = [sum(a[l] * E_new[r][l * h + b] * psi[b] for l in range(nv) for b in range(h)) % p for r in range(h_new)]
        E, hprev, h = E_new, h, h_new
        grads.append(E)
        dims.append(h)
    return dims[: maxdeg + 1], grads[: maxdeg + 1]


def top_element_mod_p(n: int, dims: Sequence[int], grads, top: int, p: int) -> dict[tuple, int]:
    """Coefficients of the unique degree-``top`` basis element, read off its iterated derivatives."""
    nv = n - 1
    level: dict[tuple, list[int]] = {(): [1]}
    for k in range(top, 0, -1):
        E = grads[k]
        hk, hprev = len(E), dims[k - 1]
        keys = list(level)
        V = _nmod(len(keys), hk, [x for key in keys for x in level[key]], p)
        new: dict[tuple, list[int]] = {}
        for i in range(nv):
            block = _nmod(hk, hprev, [E[r][i * hprev + c] for r in range(hk) for c in range(hprev)], p)
            for key, w in zip(keys, (V * block).tolist()):
                # extend index sequences in weakly increasing order only
                if key and key[-1] > i:
                    continue
                new[key + (i,)] = [int(x) for x in w]
        level = new
    out = {}
    for key, v in level.items():
        alpha = [0] * nv
        for i in key:
            alpha[i] += 1
        f = prod(factorial(e) for e in alpha)
        out[tuple(alpha)] = v[0] * pow(f, -1, p) % p
    return out


def rational_reconstruction(u: int, m: int) -> Fraction | None:
    bound = isqrt(m // 2)
    r0, r1 = m, u % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def _context(nv: int):
    return flint.fmpz_mpoly_ctx.get(tuple(f"y{i}" for i in range(nv)), "lex")


def is_harmonic(coeffs: dict[tuple, int], a: Sequence[int]) -> bool:
    """Exact check of D_r phi = 0 for all r, phi given by integer coefficients in the y variables."""
    nv = len(a) - 1
    if not coeffs:
        return True
    ctx = _context(nv)
    phi = ctx.from_dict(coeffs)
    deg = max(sum(al) for al in coeffs)
    an = a[-1]
    power_L = phi
    partial = [phi] * nv
    for r in range(1, deg + 1):
        power_L = sum((a[j] * power_L.derivative(j) for j in range(nv)), ctx.from_dict({}))
        partial = [partial[j].derivative(j) for j in range(nv)]
        total = sum((a[j] * an**r * partial[j] for j in range(nv)), ctx.from_dict({}))
        total += an * (-1) ** r * power_L
        if not total.is_zero():
            return False
    return True


def catalecticant_rank(coeffs: dict[tuple, int], nv: int, k: int, q: int) -> int:
    """Rank over F_q of the span of order-(top - k) derivatives of phi, inside degree k."""
    top = max(sum(al) for al in coeffs)
    weighted = {al: c * prod(factorial(e) for e in al) for al, c in coeffs.items()}
    rows = _monomials(nv, top - k)
    cols = _monomials(nv, k)
    flat = []
    for g in rows:
        for al in cols:
            flat.append(weighted.get(tuple(x + y for x, y in zip(g, al)), 0) % q)
    return _nmod(len(rows), len(cols), flat, q).rank()


def _monomials(nv: int, k: int) -> list[tuple]:
    if nv == 0:
        return [()] if k == 0 else []
    if nv == 1:
        return [(k,)]
    return [(e,) + rest for e in range(k, -1, -1) for rest in _monomials(nv - 1, k - e)]


def _exact_top(n: int, a: list[int], dims0: list[int], grads0, p0: int, primes, max_primes: int = 40) -> dict[tuple, int]:
    top = comb(n, 2)
    residues = top_element_mod_p(n, dims0, grads0, top, p0)
    norm = max(k for k, v in residues.items() if v)
    crt = {k: v * pow(residues[norm], -1, p0) % p0 for k, v in residues.items()}
    modulus = p0
    for _ in range(max_primes):
        rec = {}
        for key, v in crt.items():
            r = rational_reconstruction(v, modulus)
            if r is None:
                break
            rec[key] = r
        else:
            den = 1
            for v in rec.values():
                den = lcm(den, v.denominator)
            candidate = {k: int(v * den) for k, v in rec.items() if v}
            if is_harmonic(candidate, a):
                return candidate
        p = next(primes)
        dims, grads = recursion_mod_p(n, a, p, top)
        if dims[top] != 1:
            continue
        res = top_element_mod_p(n, dims, grads, top, p)
        if res[norm] == 0:
            continue
        inv = pow(res[norm], -1, p)
        mi = pow(modulus, -1, p)
        crt = {k: crt[k] + modulus * (((res[k] * inv - crt[k]) * mi) % p) for k in crt}
        modulus *= p
    raise HarmonicError("top-degree solution could not be reconstructed")


def har_hilbert_numeric(n: int, a: Sequence, maxdeg: int | None = None) -> list[int]:
    """Dimensions of the degree-k solutions of sum_i a_i (d/dx_i)^r phi = 0 (all r), k <= maxdeg."""
    if len(a) != n:
        raise ValueError("need one coefficient per variable")
    check_generic([Fraction(v) for v in a])
    a_int = _integral(a)
    top = comb(n, 2)
    if maxdeg is None:
        maxdeg = top + 1
    primes = (p for p in _primes() if a_int[-1] % p)
    p = next(primes)
    upper, grads = recursion_mod_p(n, a_int, p, max(maxdeg, top))
    if n == 1:
        return upper[: maxdeg + 1]
    if upper[top] != 1 or any(upper[top + 1:]):
        raise HarmonicError(f"unexpected top degree over F_p: {upper}")
    delta = _exact_top(n, a_int, upper, grads, p, primes)
    q = next(primes)
    lower = [catalecticant_rank(delta, n - 1, k, q) for k in range(top + 1)]
    if lower != upper[: top + 1]:
        raise HarmonicError(f"bounds do not meet: lower {lower}, upper {upper[: top + 1]}")
    return upper[: maxdeg + 1]


def expected_har_series(n: int) -> list[int]:
    """Coefficients of prod_{i=2}^n (1 - t^i) / (1 - t)^(n-1) = prod_{i=1}^n [i]_t."""
    poly = [1]
    for i in range(1, n + 1):
        new = [0] * (len(poly) + i - 1)
        for e, c in enumerate(poly):
            for j in range(i):
                new[e + j] += c
        poly = new
    return poly
