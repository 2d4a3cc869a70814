"""Bound exponents for |M(G)| and the report that collects them.

All bounds are returned as exact ``Fraction`` exponents ``e`` meaning
``log_p |M(G)| <= e``.  Bounds with side conditions are left out of a report
(``None``) when the condition fails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional

from .abelian import is_power_of, multiplier_abelian, p_valuation, tensor
from .pcgroup import PcGroup, section
from .psi import PsiContext, psi_image_log_order


class BoundDomainError(ValueError):
    pass


def green_bound(n: int) -> Fraction:
    return Fraction(n * (n - 1), 2)


def eq0_bound(n: int, k: int) -> Fraction:
    """Niroomand: (n-k-1)(n+k-2)/2 + 1."""
    return Fraction((n - k - 1) * (n + k - 2), 2) + 1


def ew_rai_bound(d: int, n: int, k: int) -> Fraction:
    """(d-1)(n+k-2)/2 + 1, from Ellis-Wiegold."""
    if d < 2:
        raise BoundDomainError("a non-abelian p-group has d >= 2")
    return Fraction((d - 1) * (n + k - 2), 2) + 1


def theorem1_bound(d: int, n: int, k: int, c: int) -> Fraction:
    """(d-1)(n+k)/2 - sum_{i=2}^{min(d,c)} (d-i)."""
    if d < 2 or c < 2:
        raise BoundDomainError("needs d >= 2 and class c >= 2")
    return Fraction((d - 1) * (n + k), 2) - sum(d - i for i in range(2, min(d, c) + 1))


def gaschutz_bound(n: int) -> Fraction:
    """n - 1, for 2-generator groups."""
    return Fraction(n - 1)


def moravec_bound(p: int, n: int) -> Fraction:
    """((p+1)/2) * ceil((n-1)/(p-1)), maximal class with n > p+1."""
    if n <= p + 1:
        raise BoundDomainError("needs n > p + 1")
    return Fraction(p + 1, 2) * ceil(Fraction(n - 1, p - 1))


def theorem3_bound(n: int) -> Fraction:
    """floor(n/2): maximal class, p odd, n >= 4."""
    if n < 4:
        raise BoundDomainError("needs n >= 4")
    return Fraction(n // 2)


# ---------------------------------------------------------------------------
# The exact-factor inequality and the exact sequence
# ---------------------------------------------------------------------------

@dataclass
class Prop1Result:
    multiplier: int
    k: int
    psi_images: dict              # i -> log_p |Im Psi_i|
    abelian_multiplier: int       # log_p |M(G^ab)|
    tensor_orders: dict           # i -> log_p |gamma_i/gamma_{i+1} (x) Gbar^ab|

    @property
    def lhs(self) -> int:
        return self.multiplier + self.k + sum(self.psi_images.values())

    @property
    def rhs(self) -> int:
        return self.abelian_multiplier + sum(self.tensor_orders.values())

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs


def prop1_factors(G: PcGroup, ctx: Optional[PsiContext] = None) -> Prop1Result:
    """Every factor of the exact-factor inequality except |M(G)| (set to 0)."""
    if G.nilpotency_class < 2:
        raise BoundDomainError("needs nilpotency class >= 2")
    ctx = ctx or PsiContext(G)
    Gab, _ = G.abelianization()
    k = _logp(G.gamma(2).order, G.prime)
    return Prop1Result(
        multiplier=0, k=k,
        psi_images={i: psi_image_log_order(ctx, i) for i in range(2, ctx.c + 1)},
        abelian_multiplier=multiplier_abelian(Gab).log_order,
        tensor_orders={i: T.log_order for i, T in ctx.tensors.items()})


def prop1_check(G: PcGroup, m: int, ctx: Optional[PsiContext] = None) -> Prop1Result:
    res = prop1_factors(G, ctx)
    res.multiplier = m
    return res


def prop1_exact_upper(G: PcGroup, ctx: Optional[PsiContext] = None) -> int:
    """Largest log_p |M(G)| compatible with the exact-factor inequality given the exact factors."""
    res = prop1_factors(G, ctx)
    return res.rhs - res.lhs


@dataclass
class KarpilowskyResult:
    x_order: Optional[int]
    ratio: Fraction
    ok: bool


def karpilowsky_check(tensor_order: int, m_group: int, m_quotient: int,
                      gamma_c_order: int, p: int) -> KarpilowskyResult:
    """|X| = |G/gamma_2 (x) gamma_c| |M(G/gamma_c)| / (|M(G)| |gamma_c|).

    Exactness of 1 -> X -> G/gamma_2 (x) gamma_c -> M(G) -> M(G/gamma_c) ->
    gamma_c -> 1 forces this to be a power of p.  Arguments are orders, not
    exponents.
    """
    if gamma_c_order <= 1:
        raise BoundDomainError("gamma_c is trivial; needs a non-abelian group")
    ratio = Fraction(tensor_order * m_quotient, m_group * gamma_c_order)
    ok = ratio.denominator == 1 and is_power_of(ratio.numerator, p)
    return KarpilowskyResult(ratio.numerator if ok else None, ratio, ok)


def karpilowsky_orders(G: PcGroup, multiplier_exponent) -> dict:
    """The four orders entering :func:`karpilowsky_check`, using an oracle callable."""
    c = G.nilpotency_class
    if c < 2:
        raise BoundDomainError("needs nilpotency class >= 2")
    p = G.prime
    gc = G.gamma(c)
    Gab, _ = G.abelianization()
    C = section(G, gc, G.trivial())
    Q, _ = G.quotient(gc)
    return {"tensor": tensor(Gab, C).order,
            "m_group": p ** multiplier_exponent(G),
            "m_quotient": p ** multiplier_exponent(Q),
            "gamma_c": gc.order}


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def _logp(n: int, p: int) -> int:
    return p_valuation(n, p) if n > 1 else 0


def _frac_json(x: Optional[Fraction]):
    if x is None:
        return None
    return {"num": x.numerator, "den": x.denominator}


BOUND_FIELDS = ("green", "gaschutz", "niroomand_eq0", "ew_rai", "theorem1",
                "moravec", "theorem3")


@dataclass
class BoundReport:
    p: int
    n: int
    k: int
    d: int
    c: int
    delta: Optional[int]
    green: Fraction
    gaschutz: Optional[Fraction] = None
    niroomand_eq0: Optional[Fraction] = None
    ew_rai: Optional[Fraction] = None
    theorem1: Optional[Fraction] = None
    moravec: Optional[Fraction] = None
    theorem3: Optional[Fraction] = None
    theorem3_raw: Optional[Fraction] = None
    prop1_exact_upper: Optional[Fraction] = None
    multiplier: Optional[int] = None
    multiplier_source: Optional[str] = None
    attained: dict = field(default_factory=dict)

    def applicable(self) -> dict:
        names = BOUND_FIELDS + ("prop1_exact_upper",)
        return {f: getattr(self, f) for f in names if getattr(self, f) is not None}

    def violations(self) -> list[str]:
        """Bounds the known multiplier exceeds (should be empty)."""
        if self.multiplier is None:
            return []
        return [f for f, e in self.applicable().items() if self.multiplier > e]

    def to_json(self) -> dict:
        out = {}
        for f in ("p", "n", "k", "d", "c", "delta"):
            out[f] = getattr(self, f)
        for f in BOUND_FIELDS + ("theorem3_raw", "prop1_exact_upper"):
            out[f] = _frac_json(getattr(self, f))
        out["multiplier"] = self.multiplier
        out["multiplier_source"] = self.multiplier_source
        out["attained"] = dict(self.attained)
        return out

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)


def build_report(G: PcGroup, m: Optional[int] = None, source: Optional[str] = None,
                 ctx: Optional[PsiContext] = None) -> BoundReport:
    p, n = G.prime, G.log_order
    c = G.nilpotency_class
    k = _logp(G.gamma(2).order, p)
    d = G.min_generators()
    rep = BoundReport(p=p, n=n, k=k, d=d, c=c, delta=None, green=green_bound(n))
    if d == 2:
        rep.gaschutz = gaschutz_bound(n)
    if c >= 2:
        ctx = ctx or PsiContext(G)
        rep.delta = ctx.delta
        rep.niroomand_eq0 = eq0_bound(n, k)
        rep.ew_rai = ew_rai_bound(d, n, k)
        rep.theorem1 = theorem1_bound(d, n, k, c)
        rep.prop1_exact_upper = Fraction(prop1_exact_upper(G, ctx))
        if n >= 2 and c == n - 1:
            if n > p + 1:
                rep.moravec = moravec_bound(p, n)
            if p != 2 and n >= 4:
                rep.theorem3 = theorem3_bound(n)
                rep.theorem3_raw = Fraction(n, 2)
    if m is not None:
        rep.multiplier = m
        rep.multiplier_source = source
        rep.attained = {f: m == e for f, e in rep.applicable().items()}
    return rep
