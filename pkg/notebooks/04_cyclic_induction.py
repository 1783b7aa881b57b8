"""Multiplicities in representations induced from a cyclic subgroup.

Two independent routes: a character sum over the cyclic group, and counting
standard tableaux by major index.  Their series times the hook factors is a
polynomial whose value at t = 1 is (|lam| - 1)!.
"""
from poisson_inv.combinat import partitions
from poisson_inv.series import kw_series

for k in range(2, 5):
    for lam in partitions(k):
        for c in (0, 1):
            s = kw_series(lam, c, 40)
            tableau = kw_series(lam, c, 12, "tableau").coefficients
            assert all(s.coefficients[n] == v for n, v in tableau.items())
            print(f"lam={lam!s:10} c={c}  K(t) = {s.numerator}  K(1) = {s.value_at_one}")
