"""
Two independent ways to compute |M(G)|
======================================

The cocycle oracle counts Z^2(G, Z/|G|) over the whole multiplication table.
The tails oracle works on the pc presentation only, so it scales with the
number of generators instead of |G|. Here they are compared side by side.
"""

import time

from pmult.catalog import build_abelian, lookup
from pmult.abelian import FinAb, multiplier_abelian
from pmult.oracle import multiplier_exponent
from pmult.tails import tails_multiplier_exponent


def timed(fn, G):
    t0 = time.perf_counter()
    value = fn(G)
    return value, time.perf_counter() - t0


# Abelian groups have a closed form, which makes a good first sanity check.
for orders in ([3, 3, 3], [9, 3], [9, 9], [27, 3, 3]):
    closed = multiplier_abelian(FinAb.from_orders(3, orders)).order
    G = build_abelian(3, orders)
    print(f"abelian{orders}: |M| = {closed}, "
          f"cocycle 3^{multiplier_exponent(G)}, tails 3^{tails_multiplier_exponent(G)}")

print()
for name in ("E(3)", "extraspecial(3,9)", "G1(3,4)", "wreath(3)", "maxclass243"):
    G = lookup(name).build()
    m1, t1 = timed(multiplier_exponent, G)
    m2, t2 = timed(tails_multiplier_exponent, G)
    print(f"{name:<18} |G| = 3^{G.log_order}: cocycle {m1} ({t1:.2f}s), tails {m2} ({t2:.3f}s)")

# Past the cocycle cap only the tails oracle is practical.
print()
for name in ("G3(3)", "G4"):
    G = lookup(name).build()
    m, t = timed(tails_multiplier_exponent, G)
    print(f"{name:<18} |G| = 3^{G.log_order}: tails {m} ({t:.3f}s)")
