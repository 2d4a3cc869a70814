"""
A maximal class group of order 3^5 with a large multiplier
==========================================================

For a p-group of maximal class with |G| = p^n, n >= 4, one expects
log_p |M(G)| <= floor(n/2). The group built here has n = 5 but a multiplier
of order 3^3, and both oracles agree on that value.
"""

from pmult.bounds import build_report, prop1_exact_upper
from pmult.catalog import lookup
from pmult.oracle import multiplier_exponent
from pmult.psi import theorem3_witness
from pmult.tails import tails_multiplier_exponent

G = lookup("maxclass243").build()
print("order 3^%d, class %d, maximal class: %s" % (G.log_order, G.nilpotency_class,
                                                    G.is_maximal_class()))
print("lower central series orders:", [G.gamma(i).order for i in range(1, G.nilpotency_class + 2)])

m_cocycle = multiplier_exponent(G)
m_tails = tails_multiplier_exponent(G)
print(f"log_3 |M(G)|: cocycle {m_cocycle}, tails {m_tails}")

# The Psi-based witness still exists, so the failure is in the final count,
# not in the choice of generators.
w = theorem3_witness(G)
print("witness found:", w.holds, " nontrivial odd Psi_i:", w.psi_nontrivial)

rep = build_report(G, m_cocycle, "oracle")
print(f"floor(n/2) = {rep.theorem3}, raw n/2 = {rep.theorem3_raw}")
print("violated bounds:", rep.violations())

# The exact image bound from Psi_2 and Psi_3 is still correct, and sharp here.
print("exact image bound:", prop1_exact_upper(G))
