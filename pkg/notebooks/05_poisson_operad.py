"""Graded characters of the Poisson operad from a symmetric function product.

Compares the product with brute-force decompositions of SC_n(C^4), which
equals P_n in this range, and shows where the two exponent conventions split.
"""
from poisson_inv.combinat import serialize_partition
from poisson_inv.series import poisson_character_product, poisson_dimension, poisson_multiplicities
from poisson_inv.spaces import decompose, sc_space

print("dim (P_n)_{2m}:", {n: [poisson_dimension(n, m) for m in range(n)] for n in range(1, 6)})

for variant in ("d-1", "i-i/d"):
    product = poisson_character_product(4, 5, 5, variant)
    for n in range(2, 6):
        ok = all(poisson_multiplicities(product, n, m) == decompose(sc_space(n, 2, m), "n") for m in range(n))
        print(f"variant {variant:6} n={n}: {'agrees' if ok else 'differs'}")

printed = poisson_multiplicities(poisson_character_product(4, 5, 5, "d-1"), 5, 1)
print("printed form at n=5, m=1:", {serialize_partition(k): str(v) for k, v in printed.items()})
