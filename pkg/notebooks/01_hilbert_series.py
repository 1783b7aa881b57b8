"""Graded dimensions of Inv_n(C^2), SC_n(C^2) and Quant_n(C^2) for small n.

Run with ``python notebooks/01_hilbert_series.py``.  Bases are cached under
$POISSON_INV_CACHE (default ./cache), so a second run is instant.
"""
from poisson_inv.spaces import containment, max_order, space

# Inv_n(C^2) as a polynomial in t (order 2m carries t^(2m))
for n in range(1, 6):
    dims = [space("inv", n, 1, m).dim for m in range(max_order("inv", n, 1) + 1)]
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    print(f"Inv_{n}(C^2):", " + ".join(f"{c}t^{2 * m}" for m, c in enumerate(dims) if c))

# the three spaces side by side; SC drops out first, at n = 4 and order 8
print("\n n  m   SC  Quant  Inv")
for n in (4, 5):
    for m in range(n + 1):
        sc, quant, inv = (space(k, n, 1, m) for k in ("sc", "quant", "inv"))
        assert containment(sc, quant) and containment(quant, inv)
        print(f"{n:2} {m:2} {sc.dim:4} {quant.dim:6} {inv.dim:4}")
