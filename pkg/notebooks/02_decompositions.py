"""Symmetric group structure of the invariant spaces.

Inv_n(V) carries an action of S_{n+1}, not just S_n.  Irreducibles are
labelled by truncated diagrams lam, standing for lam[n+1].
"""
from poisson_inv.characters import restrict_decomposition
from poisson_inv.combinat import serialize_partition
from poisson_inv.spaces import decompose, inv_space


def show(title, mults):
    parts = [f"{c}*[{serialize_partition(full[1:])}]" if c > 1 else f"[{serialize_partition(full[1:])}]"
             for full, c in sorted(mults.items())]
    print(f"{title}: {' + '.join(parts)}")


for m in range(6):
    show(f"Inv_5(C^2)_{2 * m} under S_6", decompose(inv_space(5, 1, m)))

# the sign of S_6 appears once, in order 8
b = inv_space(5, 1, 4)
print("sign multiplicity:", decompose(b).get((1,) * 6, 0))

# branching back to S_5 agrees with the S_5 decomposition computed directly
assert restrict_decomposition(decompose(b, "n+1")) == decompose(b, "n")

# with dim V = 4 the order-4 piece at n = 4 has three irreducible summands
show("Inv_4(C^4)_4 under S_5", decompose(inv_space(4, 2, 2)))
