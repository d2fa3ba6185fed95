"""Cycle sums: how L_n and L_k pair, and what happens when passing to Z_n.

Run with ``python demos/cycles_and_transfers.py``.
"""
from bipolar import CycleSum, cycle_pairing, zn_transfer

l4, l6 = CycleSum.single(4), CycleSum.single(6)
r = cycle_pairing(l4, l6)
print("L4 x L6 =", r.product.mult, " ten =", r.ten, " hom(L4, L6) =", r.hom)

# a map L_n -> L_k exists only when k divides n
for k in (1, 2, 3, 4):
    print(f"hom(L4, L{k}) = {cycle_pairing(l4, CycleSum.single(k)).hom}")

a = CycleSum({6: 1, 2: 2})
print("\nA = L6 + 2 L2, acting through Z -> Z4")
print("  coreflect (keep cycles whose length divides 4):", zn_transfer(a, 4, "coreflect").mult)
print("  reflect (shrink each k-cycle to gcd(4, k)):   ", zn_transfer(a, 4, "reflect").mult)
