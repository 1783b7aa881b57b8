"""Characters of symmetric groups.

Irreducible characters use the Murnaghan-Nakayama rule on beta-sets.  Class
functions are stored as exact rationals keyed by cycle type.  Inductions from
the cyclic subgroup generated by a full cycle stay rational by grouping powers
of the generator by their gcd with the group order (Ramanujan sums).
"""
from __future__ import annotations

import json
import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, prod
from typing import Callable, Iterable, Mapping, Sequence

from .combinat import Partition, num_syt, pad, parse_partition, partitions, serialize_partition

CycleType = Partition

_lock = threading.Lock()


def z_centralizer(mu: Sequence[int]) -> int:
    """Order of the centralizer of a permutation of cycle type ``mu``."""
    counts: dict[int, int] = {}
    for part in mu:
        counts[part] = counts.get(part, 0) + 1
    return prod(k**c * factorial(c) for k, c in counts.items())


def class_size(mu: Sequence[int]) -> int:
    return factorial(sum(mu)) // z_centralizer(mu)


def cycle_type(perm: Sequence[int]) -> Partition:
    """Cycle type of a permutation given in one-line notation on 0..N-1."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if not seen[start]:
            k, length = start, 0
            while not seen[k]:
                seen[k] = True
                k = perm[k]
                length += 1
            lengths.append(length)
    return Partition(sorted(lengths, reverse=True))


def representative(mu: Sequence[int]) -> tuple[int, ...]:
    """A permutation (one-line, 0-based) of cycle type ``mu`` made of consecutive cycles.

    Fixed points, if any, are placed last so that the largest letter is fixed.
    """
    perm: list[int] = []
    start = 0
    for length in sorted(mu, reverse=True):
        perm.extend(start + (j + 1) % length for j in range(length))
        start += length
    return tuple(perm)


def _beta(lam: Sequence[int], length: int) -> tuple[int, ...]:
    return tuple(lam[i] + length - 1 - i if i < len(lam) else length - 1 - i for i in range(length))


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1
    k, rest = mu[0], Partition(mu[1:])
    length = len(lam)
    beta = _beta(lam, length)
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - k
        if target < 0 or target in occupied:
            continue
        height = sum(1 for x in beta if target < x < b)
        new_beta = sorted((target if x == b else x for x in beta), reverse=True)
        new_lam = Partition(x - (length - 1 - i) for i, x in enumerate(new_beta))
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def irreducible_character(lam_full: Sequence[int], mu: Sequence[int]) -> int:
    lam, mu = Partition(lam_full), Partition(sorted(mu, reverse=True))
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    with _lock:
        return _mn(lam, mu)


class ClassFunction:
    """An exact rational class function on S_N."""

    def __init__(self, N: int, values: Mapping[Sequence[int], object]):
        self.N = N
        self.values: dict[Partition, Fraction] = {}
        for mu in partitions(N):
            self.values[mu] = Fraction(values.get(mu, values.get(tuple(mu), 0)))
        extra = {Partition(k) for k in values} - set(self.values)
        if extra:
            raise ValueError(f"cycle types of the wrong size: {sorted(extra)}")

    def __call__(self, mu: Sequence[int]) -> Fraction:
        return self.values[Partition(sorted(mu, reverse=True))]

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and self.N == other.N and self.values == other.values

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if self.N != other.N:
            raise ValueError("size mismatch")
        return ClassFunction(self.N, {mu: self.values[mu] + other.values[mu] for mu in self.values})

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        if self.N != other.N:
            raise ValueError("size mismatch")
        return ClassFunction(self.N, {mu: self.values[mu] * other.values[mu] for mu in self.values})

    def __repr__(self) -> str:
        return f"ClassFunction({self.N}, {self.to_json()})"

    def degree(self) -> Fraction:
        return self.values[Partition([1] * self.N)]

    def to_json(self) -> dict[str, str]:
        return {serialize_partition(mu): _frac_str(v) for mu, v in self.values.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str] | str) -> "ClassFunction":
        if isinstance(data, str):
            data = json.loads(data)
        values = {parse_partition(k): Fraction(v) for k, v in data.items()}
        N = max((mu.size for mu in values), default=0)
        return cls(N, values)

    def decompose(self) -> dict[Partition, Fraction]:
        out = {}
        for lam in partitions(self.N):
            c = multiplicity(self, lam)
            if c:
                out[lam] = c
        return out


def _frac_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def irreducible(lam_full: Sequence[int]) -> ClassFunction:
    lam = Partition(lam_full)
    return ClassFunction(lam.size, {mu: irreducible_character(lam, mu) for mu in partitions(lam.size)})


def trivial_character(N: int) -> ClassFunction:
    return ClassFunction(N, {mu: 1 for mu in partitions(N)})


def sign_character(N: int) -> ClassFunction:
    return ClassFunction(N, {mu: (-1) ** (N - len(mu)) for mu in partitions(N)})


def regular_character(N: int) -> ClassFunction:
    return ClassFunction(N, {Partition([1] * N): factorial(N)})


def from_function(N: int, f: Callable[[Partition], object]) -> ClassFunction:
    return ClassFunction(N, {mu: f(mu) for mu in partitions(N)})


def inner_product(phi: ClassFunction, psi: ClassFunction) -> Fraction:
    if phi.N != psi.N:
        raise ValueError("size mismatch")
    total = sum(class_size(mu) * phi.values[mu] * psi.values[mu] for mu in phi.values)
    return Fraction(total, factorial(phi.N))


def multiplicity(phi: ClassFunction, lam_full: Sequence[int]) -> Fraction:
    lam = Partition(lam_full)
    if lam.size != phi.N:
        raise ValueError(f"size mismatch: |{lam}| != {phi.N}")
    total = sum(class_size(mu) * v * irreducible_character(lam, mu) for mu, v in phi.values.items() if v)
    return Fraction(total, factorial(phi.N))


def mobius(n: int) -> int:
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def ramanujan_sum(q: int, c: int) -> int:
    """Sum of exp(2 pi i a c / q) over a in 1..q coprime to q."""
    g = gcd(q, c)
    return sum(mobius(q // e) * e for e in divisors(g))


def cyclic_induced_character(N: int, c: int) -> ClassFunction:
    """Character of Ind from Z/N (generated by an N-cycle) of the character g -> exp(2 pi i c/N)."""
    if N == 0:
        return ClassFunction(0, {Partition(): 1})
    values: dict[Partition, Fraction] = {}
    for g in divisors(N):
        mu = Partition([N // g] * g)
        # powers g^j with gcd(j, N) = g all have cycle type mu
        values[mu] = Fraction(z_centralizer(mu) * ramanujan_sum(N // g, c), N)
    return ClassFunction(N, values)


def cyclic_induced_multiplicity(n: int, c: int, lam: Sequence[int], method: str = "character") -> int:
    """Multiplicity of lam[n+1] in Ind from Z/(n+1) to S_{n+1} of chi_c."""
    full = pad(lam, n + 1)
    N = n + 1
    if method == "character":
        total = sum(ramanujan_sum(N // g, c) * irreducible_character(full, [N // g] * g) for g in divisors(N))
        value, rem = divmod(total, N)
        if rem:
            raise ArithmeticError(f"non-integer multiplicity {Fraction(total, N)}")
        return value
    if method == "tableau":
        from .combinat import count_syt_by_major_mod

        return count_syt_by_major_mod(full, N, c)
    raise ValueError(f"unknown method {method!r}")


def restrict_branch(lam_full: Sequence[int]) -> list[Partition]:
    lam = Partition(lam_full)
    out = []
    for i in lam.removable_corners():
        parts = list(lam)
        parts[i] -= 1
        out.append(Partition(parts))
    return out


def restrict_decomposition(mults: Mapping[Partition, int]) -> dict[Partition, int]:
    out: dict[Partition, int] = {}
    for lam, c in mults.items():
        for mu in restrict_branch(lam):
            out[mu] = out.get(mu, 0) + c
    return {k: v for k, v in out.items() if v}


def dimension(lam_full: Sequence[int]) -> int:
    return num_syt(lam_full)


def as_integer_multiplicities(mults: Mapping[Partition, Fraction]) -> dict[Partition, int]:
    out = {}
    for lam, c in mults.items():
        if c.denominator != 1 or c < 0:
            raise ArithmeticError(f"not a character: multiplicity {c} at {serialize_partition(lam)}")
        if c:
            out[lam] = int(c)
    return out


def decompose(phi: ClassFunction) -> dict[Partition, int]:
    return as_integer_multiplicities(phi.decompose())


def sum_characters(chars: Iterable[ClassFunction], N: int) -> ClassFunction:
    total = ClassFunction(N, {})
    for ch in chars:
        total = total + ch
    return total
