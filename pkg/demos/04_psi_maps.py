"""
Evaluating the Psi maps
=======================

Psi_i sends an (i+1)-tuple of elements to (G/Z)^ab tensored with gamma_i/gamma_{i+1}.
This walks through a few values and the image orders.
"""

from pmult.catalog import lookup
from pmult.psi import PsiContext, psi2_eval, psi_i_eval, psi_image_log_order

for name in ("E(3)", "G3(3)", "wreath(3)", "G4"):
    G = lookup(name).build()
    ctx = PsiContext(G)
    images = {i: psi_image_log_order(ctx, i) for i in range(2, ctx.c + 1)}
    print(f"{name:<10} c = {ctx.c}, delta = {ctx.delta}, log image orders {images}")

G = lookup("G3(3)").build()
ctx = PsiContext(G)
a1, a2, a3 = G.gens[:3]
print("\nPsi_2(a1, a2, a3) on G3(3):", psi2_eval(ctx, a1, a2, a3).value)
print("general evaluator agrees:", psi_i_eval(ctx, 2, (a1, a2, a3)) == psi2_eval(ctx, a1, a2, a3))

# Multiplying an argument by a central element does not change the value.
z = G.center().sorted_elements()[-1]
print("central shift invariant:", psi2_eval(ctx, G.mul(a1, z), a2, a3) == psi2_eval(ctx, a1, a2, a3))
