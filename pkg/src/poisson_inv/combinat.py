"""Partitions, standard Young tableaux, hook lengths and major indices.

Partitions are immutable tuples of positive weakly decreasing integers.  The
truncated-diagram convention is used throughout the package: a partition
``lam`` of small size stands for the family ``lam.pad(n)`` obtained by
prepending a first row of length ``n - |lam|``.
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence


class PaddingError(ValueError):
    """Raised when ``lam[n]`` does not exist (``n < |lam| + lam_1``)."""


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return serialize_partition(self)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def first(self) -> int:
        return self[0] if self else 0

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self):
            for j in range(row):
                yield i, j

    def hook(self, i: int, j: int) -> int:
        conj = self.conjugate()
        return (self[i] - j - 1) + (conj[j] - i - 1) + 1

    def hook_lengths(self) -> list[int]:
        return hook_lengths(self)

    def pad(self, n: int) -> "Partition":
        return pad(self, n)

    def truncate(self) -> "Partition":
        """Drop the first row (inverse of ``pad``)."""
        return Partition(self[1:])

    def removable_corners(self) -> list[int]:
        """Row indices whose last cell can be removed."""
        return [i for i in range(len(self)) if i == len(self) - 1 or self[i] > self[i + 1]]

    def addable_rows(self) -> list[int]:
        return [i for i in range(len(self) + 1) if i == 0 or self[i - 1] > (self[i] if i < len(self) else 0)]


def serialize_partition(lam: Sequence[int]) -> str:
    return ",".join(str(p) for p in lam) if len(lam) else "-"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("-", "", "()"):
        return Partition()
    return Partition(int(x) for x in text.strip("()").split(",") if x.strip())


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + tuple(rest))


def partitions_up_to(size: int) -> Iterator[Partition]:
    for k in range(size + 1):
        yield from partitions(k)


def hook_lengths(lam: Sequence[int]) -> list[int]:
    lam = Partition(lam)
    conj = lam.conjugate()
    return [(lam[i] - j - 1) + (conj[j] - i - 1) + 1 for i, j in lam.cells()]


def num_syt(lam: Sequence[int]) -> int:
    """Number of standard tableaux via the hook length formula."""
    lam = Partition(lam)
    return factorial(lam.size) // prod(hook_lengths(lam))


def pad(lam: Sequence[int], n: int) -> Partition:
    lam = Partition(lam)
    if n < lam.size + lam.first():
        raise PaddingError(f"padding undefined: {serialize_partition(lam)}[{n}] needs n >= {lam.size + lam.first()}")
    return Partition((n - lam.size,) + tuple(lam))


def pad_exists(lam: Sequence[int], n: int) -> bool:
    return n >= sum(lam) + (lam[0] if len(lam) else 0)


class StandardTableau:
    """A standard Young tableau stored as a tuple of rows."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.rows = tuple(tuple(r) for r in rows if len(r))
        self.shape = Partition(len(r) for r in self.rows)
        entries = sorted(x for r in self.rows for x in r)
        if entries != list(range(1, self.shape.size + 1)):
            raise ValueError("entries must be 1..N")
        for r in self.rows:
            if any(r[j] >= r[j + 1] for j in range(len(r) - 1)):
                raise ValueError("rows must increase")
        for i in range(len(self.rows) - 1):
            if any(self.rows[i][j] >= self.rows[i + 1][j] for j in range(len(self.rows[i + 1]))):
                raise ValueError("columns must increase")

    def __eq__(self, other) -> bool:
        return isinstance(other, StandardTableau) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"StandardTableau({self.rows})"

    def row_of(self) -> dict[int, int]:
        return {x: i for i, r in enumerate(self.rows) for x in r}

    def descents(self) -> list[int]:
        where = self.row_of()
        return [i for i in range(1, self.shape.size) if where[i + 1] > where[i]]

    def major_index(self) -> int:
        return sum(self.descents())


def major_index(T: StandardTableau) -> int:
    return T.major_index()


def standard_tableaux(shape: Sequence[int]) -> Iterator[StandardTableau]:
    """Enumerate SYT by placing 1, 2, ... in turn, trying upper rows first."""
    shape = Partition(shape)
    N = shape.size
    rows: list[list[int]] = [[] for _ in shape]

    def place(k: int) -> Iterator[StandardTableau]:
        if k > N:
            yield StandardTableau(rows)
            return
        for i in range(len(shape)):
            if len(rows[i]) < shape[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                yield from place(k + 1)
                rows[i].pop()

    if N == 0:
        yield StandardTableau([])
        return
    yield from place(1)


def _poly_add(a: list[int], b: list[int], shift: int = 0) -> list[int]:
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for i, c in enumerate(b):
        out[i + shift] += c
    return out


@lru_cache(maxsize=None)
def _maj_by_last_row(shape: Partition, row: int) -> tuple[int, ...]:
    # q-counts of SYT of `shape` whose largest entry sits in `row`
    N = shape.size
    if N == 1:
        return (1,)
    smaller = list(shape)
    smaller[row] -= 1
    smaller = Partition(smaller)
    total: list[int] = []
    for prev in smaller.removable_corners():
        # N-1 is a descent exactly when N sits strictly lower
        shift = N - 1 if row > prev else 0
        total = _poly_add(total, list(_maj_by_last_row(smaller, prev)), shift)
    return tuple(total)


def maj_generating_function(shape: Sequence[int]) -> list[int]:
    """Coefficients of sum over SYT of q^maj, by recursion on the largest entry."""
    shape = Partition(shape)
    if shape.size == 0:
        return [1]
    total: list[int] = []
    for r in shape.removable_corners():
        total = _poly_add(total, list(_maj_by_last_row(shape, r)))
    return total


def count_syt_by_major_mod(lam_full: Sequence[int], modulus: int, residue: int) -> int:
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    coeffs = maj_generating_function(lam_full)
    return sum(c for e, c in enumerate(coeffs) if (e - residue) % modulus == 0)


def _poly_mul_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return []
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


def syt_q_series(lam_full: Sequence[int], truncation: int | None = None) -> list[int]:
    """Closed form q^{b(lam)} [N]_q! / prod_h (1 - q^h), truncated to degree ``truncation``."""
    lam = Partition(lam_full)
    N = lam.size
    b = sum(i * part for i, part in enumerate(lam))
    num = [1]
    for k in range(1, N + 1):
        num = _poly_mul_trunc(num, [1] + [0] * (k - 1) + [-1], len(num) - 1 + k)
    den = [1]
    for h in hook_lengths(lam):
        den = _poly_mul_trunc(den, [1] + [0] * (h - 1) + [-1], len(den) - 1 + h)
    # divide (1 - q^k) products; leading coefficients are +-1
    quot = _poly_div_exact(num, den) if N else [1]
    series = [0] * b + quot
    while len(series) > 1 and series[-1] == 0:
        series.pop()
    if truncation is not None:
        series = series[: truncation + 1]
    return series


def evaluate_poly(coeffs: Sequence[int], q) -> int:
    return sum(c * q**e for e, c in enumerate(coeffs))
