"""Second multiplier oracle: tails on a consistent pc presentation.

A central extension of ``G`` by ``A = Z/n`` with chosen lifts of the pc
generators is a copy of the presentation of ``G`` with a central "tail"
``t_r`` in ``A`` appended to each relation ``r``::

    g_i^p = w_i t_i,        [g_j, g_i] = w_ji t_ji.

The tails give an extension of order ``n |G|`` exactly when the usual overlap
tests still hold, and each overlap test is a linear condition on the tails.
Changing the lifts ``g_i -> g_i a_i`` moves the tails by a linear map of
``a``.  So ``H^2(G, Z/n) = Z / B`` with ``Z`` the consistent tails and ``B``
the image of lift changes, and with ``n = |G|`` again
``|M(G)| = |H^2(G, Z/n)| / |G^ab|``.

The cost is polynomial in the number of generators and the group is never
tabulated, so this reaches orders the cocycle oracle refuses.  It shares only
the mod-``p^a`` kernel counter with :mod:`pmult.oracle`.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .oracle import kernel_log_order
from .pcgroup import Element, PcGroup


class TailCollector:
    """Collection in the generic central extension, tracking tails over ``Z/n``."""

    def __init__(self, G: PcGroup, modulus: Optional[int] = None):
        if any(r != G.prime for r in G.orders):
            raise ValueError("tails need every relative order equal to p")
        self.group = G
        self.modulus = modulus or G.order
        m = G.ngens
        self.relations = [("power", i) for i in range(m)]
        self.relations += [("comm", j, i) for j in range(m) for i in range(j)]
        self.index = {r: t for t, r in enumerate(self.relations)}
        self.ntails = len(self.relations)
        self._cache: dict = {}

    def zero(self) -> np.ndarray:
        return np.zeros(self.ntails, dtype=np.int64)

    def unit(self, rel) -> np.ndarray:
        v = self.zero()
        v[self.index[rel]] = 1
        return v

    def times_gen(self, x: Element, k: int) -> tuple[Element, np.ndarray]:
        # mirrors PcGroup._times_gen, adding a tail for every relation applied
        key = (x, k)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        G = self.group
        e = list(x)
        rest = e[k + 1:]
        e[k + 1:] = [0] * len(rest)
        e[k] += 1
        tail = self.zero()
        if e[k] == G.orders[k]:
            e[k] = 0
            y, t = self.times_vec(tuple(e), G.pres.power_rhs(k))
            tail += t
            tail[self.index[("power", k)]] += 1
        else:
            y = tuple(e)
        for j, ej in enumerate(rest, start=k + 1):
            c = G.pres.comms.get((j, k))
            for _ in range(ej):
                y, t = self.times_gen(y, j)
                tail += t
                if c is not None:
                    y, t = self.times_vec(y, c)
                    tail += t
                tail[self.index[("comm", j, k)]] += 1
        tail %= self.modulus
        self._cache[key] = (y, tail)
        return y, tail

    def times_vec(self, x: Element, word) -> tuple[Element, np.ndarray]:
        tail = self.zero()
        for t, a in enumerate(word):
            for _ in range(a):
                x, s = self.times_gen(x, t)
                tail += s
        return x, tail % self.modulus

    def mul(self, x, y) -> tuple[Element, np.ndarray]:
        """Product of (element, tail) pairs; tails are central so they add."""
        z, t = self.times_vec(x[0], y[0])
        return z, (x[1] + y[1] + t) % self.modulus


def consistency_rows(C: TailCollector) -> np.ndarray:
    """One row per overlap test: the tail difference of its two evaluations."""
    G = C.group
    m, p = G.ngens, G.prime
    g = [(G.gen(i), C.zero()) for i in range(m)]

    def pw(i, e):
        return (tuple(e if t == i else 0 for t in range(m)), C.zero())

    def rhs_power(i):
        return (G.pres.power_rhs(i), C.unit(("power", i)))

    rows = []

    def compare(a, b, where):
        if a[0] != b[0]:
            raise ValueError(f"presentation is inconsistent at {where}")
        rows.append((a[1] - b[1]) % C.modulus)

    mul = C.mul
    for k in range(m):
        for j in range(k):
            for i in range(j):
                compare(mul(g[k], mul(g[j], g[i])), mul(mul(g[k], g[j]), g[i]), (k, j, i))
    for j in range(m):
        for i in range(j):
            compare(mul(pw(j, p - 1), mul(g[j], g[i])), mul(rhs_power(j), g[i]), (j, j, i))
            compare(mul(mul(g[j], g[i]), pw(i, p - 1)), mul(g[j], rhs_power(i)), (j, i, i))
    for i in range(m):
        compare(mul(g[i], rhs_power(i)), mul(rhs_power(i), g[i]), (i, i, i))
    if not rows:
        return np.zeros((0, C.ntails), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def lift_change_matrix(C: TailCollector) -> np.ndarray:
    """Tail shift caused by ``g_i -> g_i a_i``; columns are the ``a_i``."""
    G = C.group
    m, p = G.ngens, G.prime
    M = np.zeros((C.ntails, m), dtype=np.int64)
    for i in range(m):
        r = C.index[("power", i)]
        M[r, i] += p
        M[r, :] -= np.array(G.pres.power_rhs(i), dtype=np.int64)
    for (j, i), w in G.pres.comms.items():
        M[C.index[("comm", j, i)], :] -= np.array(w, dtype=np.int64)
    return M % C.modulus


def tails_multiplier_exponent(G: PcGroup) -> int:
    """log_p |M(G)| from consistent tails modulo lift changes."""
    p = G.prime
    a = G.log_order
    if a == 0:
        return 0
    C = TailCollector(G)
    z = kernel_log_order(consistency_rows(C), p, a, ncols=C.ntails)
    # |B| = n^m / |kernel of the lift-change map|
    b = a * G.ngens - kernel_log_order(lift_change_matrix(C), p, a, ncols=G.ngens)
    Gab, _ = G.abelianization()
    return z - b - Gab.log_order
