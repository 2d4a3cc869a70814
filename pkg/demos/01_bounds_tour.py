"""
Bounds on the Schur multiplier, group by group
==============================================

Builds each catalog group, computes its multiplier with whichever oracle
fits, and lays the classical bounds next to it. Run with ``python3``.
"""

from pmult.bounds import build_report
from pmult.catalog import STANDARD, lookup
from pmult.oracle import multiplier_exponent
from pmult.tails import tails_multiplier_exponent

# Bounds are log_p exponents: a value b means |M(G)| <= p^b.
COLUMNS = ["green", "gaschutz", "niroomand_eq0", "ew_rai", "theorem1", "moravec", "theorem3"]


def fmt(x):
    return "-" if x is None else str(x)


print(f"{'group':<20} {'n':>2} {'m':>3}  " + " ".join(f"{c:>13}" for c in COLUMNS))
for name in STANDARD:
    entry = lookup(name)
    G = entry.build()
    # small groups go through the cocycle count, the rest through the tails method
    m = multiplier_exponent(G) if G.order <= 243 else tails_multiplier_exponent(G)
    rep = build_report(G, m, "oracle")
    row = " ".join(f"{fmt(getattr(rep, c)):>13}" for c in COLUMNS)
    flag = "  <-- " + ",".join(rep.violations()) if rep.violations() else ""
    print(f"{name:<20} {rep.n:>2} {m:>3}  {row}{flag}")

# A '-' means the bound's hypotheses do not apply to that group.
