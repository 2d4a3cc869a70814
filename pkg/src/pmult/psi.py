"""The maps Psi_i into (gamma_i / gamma_{i+1}) (x) (G/Z(G))^ab and their images.

For ``2 <= i <= c`` and elements ``x_1, ..., x_{i+1}``::

    Psi_i(x_1 (x) ... (x) x_{i+1}) = sum_j [R_j, L_j] (x) x_j

where, for the slot ``j``, ``L_j = [x_1, ..., x_{j-1}]_l`` (left-normed) and
``R_j = [x_{j+1}, ..., x_{i+1}]_r`` (right-normed); an empty side drops out of
the bracket and a one-element side is the element itself.  ``j = i+1`` gives
``[x_1..x_i]_l (x) x_{i+1}`` and ``j = 1`` gives ``[x_2..x_{i+1}]_r (x) x_1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abelian import FinAb, TensorElement, TensorGroup, subgroup_log_order, tensor, tensor_elem
from .pcgroup import Element, PcGroup, Subgroup, section

MAX_TUPLES = 10 ** 6


class PsiError(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    """A search that the underlying lemma guarantees to succeed came back empty."""


@dataclass(frozen=True)
class PsiValue:
    index: int
    value: TensorElement

    def is_trivial(self) -> bool:
        return self.value.is_zero()


class PsiContext:
    """Everything the Psi maps of one group need, computed once.

    ``lifts`` are the generator lifts S: the first pc generators whose images
    are independent in Gbar / Phi(Gbar), Gbar = G / Z(G).
    """

    def __init__(self, G: PcGroup):
        self.group = G
        self.prime = G.prime
        self.c = G.nilpotency_class
        if self.c < 2:
            raise PsiError("Psi maps need nilpotency class >= 2")
        self.center = G.center()
        self.series = G.lower_central_series()
        zg2 = G.join(self.center, G.gamma(2))
        self.gbar_ab: FinAb = section(G, G.whole(), zg2)
        self.sections: dict[int, FinAb] = {
            i: section(G, G.gamma(i), G.gamma(i + 1)) for i in range(2, self.c + 1)}
        self.tensors: dict[int, TensorGroup] = {
            i: tensor(A, self.gbar_ab) for i, A in self.sections.items()}

        phi_z = G.join(G.frattini(), self.center)
        lifts, H = [], phi_z
        for g in G.gens:
            if g not in H:
                lifts.append(g)
                H = H.extend([g])
        self.lifts: tuple[Element, ...] = tuple(lifts)
        self.delta = len(lifts)
        if G.prime ** self.delta != G.order // phi_z.order:
            raise InternalInconsistency("lifts do not give a basis of Gbar / Phi(Gbar)")

    def tensor_group(self, i: int) -> TensorGroup:
        if i not in self.tensors:
            raise PsiError(f"Psi_{i} needs 2 <= i <= c = {self.c}")
        return self.tensors[i]

    def basic(self, i: int, comm: Element, x: Element) -> TensorElement:
        """comm gamma_{i+1} (x) x Z(G) gamma_2(G)."""
        A = self.sections[i]
        if comm not in self.group.gamma(i):
            raise PsiError(f"element is not in gamma_{i}")
        return tensor_elem(self.tensors[i], A.dlog(comm), self.gbar_ab.dlog(x))

    def section_coords(self, i: int, x: Element) -> tuple[int, ...]:
        return self.sections[i].dlog(x)


def _bracket(G: PcGroup, right: Sequence[Element], left: Sequence[Element]) -> Element:
    """[R, L] with R right-normed and L left-normed; empty sides drop out."""
    r = right[0] if len(right) == 1 else (G.right_normed(right) if right else None)
    lft = left[0] if len(left) == 1 else (G.left_normed(left) if left else None)
    if r is None:
        return lft
    if lft is None:
        return r
    return G.commutator(r, lft)


def psi_i_eval(ctx: PsiContext, i: int, xs: Sequence[Element]) -> PsiValue:
    """General Psi_i, any 2 <= i <= c, on ``i + 1`` group elements."""
    if len(xs) != i + 1:
        raise PsiError(f"Psi_{i} takes {i + 1} arguments, got {len(xs)}")
    T = ctx.tensor_group(i)
    G = ctx.group
    total = T.zero()
    for j in range(i + 1):          # 0-based slot j holds x_{j+1}
        c = _bracket(G, xs[j + 1:], xs[:j])
        total = total + ctx.basic(i, c, xs[j])
    return PsiValue(i, total)


def psi2_eval(ctx: PsiContext, x1: Element, x2: Element, x3: Element) -> PsiValue:
    """[x1,x2] (x) x3 + [x2,x3] (x) x1 + [x3,x1] (x) x2."""
    G = ctx.group
    v = (ctx.basic(2, G.commutator(x1, x2), x3)
         + ctx.basic(2, G.commutator(x2, x3), x1)
         + ctx.basic(2, G.commutator(x3, x1), x2))
    return PsiValue(2, v)


def psi3_display(ctx: PsiContext, x1, x2, x3, x4) -> PsiValue:
    """Psi_3 written out term by term."""
    G = ctx.group
    c = G.commutator
    v = (ctx.basic(3, c(c(x1, x2), x3), x4)
         + ctx.basic(3, c(x4, c(x1, x2)), x3)
         + ctx.basic(3, c(c(x3, x4), x1), x2)
         + ctx.basic(3, c(x2, c(x3, x4)), x1))
    return PsiValue(3, v)


def psi4_display(ctx: PsiContext, x1, x2, x3, x4, x5) -> PsiValue:
    """Psi_4 written out term by term."""
    G = ctx.group
    c = G.commutator
    v = (ctx.basic(4, c(c(c(x1, x2), x3), x4), x5)
         + ctx.basic(4, c(x5, c(c(x1, x2), x3)), x4)
         + ctx.basic(4, c(c(x4, x5), c(x1, x2)), x3)
         + ctx.basic(4, c(c(x3, c(x4, x5)), x1), x2)
         + ctx.basic(4, c(x2, c(x3, c(x4, x5))), x1))
    return PsiValue(4, v)


def psi_image_log_order(ctx: PsiContext, i: int) -> int:
    """log_p |Im Psi_i|, from Psi_i on every (i+1)-tuple of generator lifts."""
    ctx.tensor_group(i)
    count = ctx.delta ** (i + 1)
    if count > MAX_TUPLES:
        raise PsiError(f"{count} basic tuples exceed the limit {MAX_TUPLES}")
    values = {psi_i_eval(ctx, i, xs).value
              for xs in itertools.product(ctx.lifts, repeat=i + 1)}
    return subgroup_log_order(ctx.tensors[i], list(values))


def psi_image_order(ctx: PsiContext, i: int) -> int:
    return ctx.prime ** psi_image_log_order(ctx, i)


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------

@dataclass
class Theorem1Witness:
    i: int
    commutator: tuple                 # (y_1, ..., y_i), elements of S
    others: tuple                     # (z_1, ..., z_{delta-i})
    values: list = field(repr=False)
    log_lower_bound: int              # log_p of the order the values generate
    required: int                     # delta - i

    @property
    def holds(self) -> bool:
        return self.log_lower_bound >= self.required


def theorem1_witness(ctx: PsiContext, i: int) -> Theorem1Witness:
    """Lower bound |Im Psi_i| >= p^(delta - i) from one weight-i commutator.

    Picks y_1..y_i in S with [y_1, ..., y_i] outside gamma_{i+1} and the first
    delta - i lifts not among the y's, then measures the subgroup generated
    by Psi_i(y_1, ..., y_i, z_j).
    """
    G = ctx.group
    if not 2 <= i <= min(ctx.delta, ctx.c):
        raise PsiError(f"need 2 <= i <= min(delta, c) = {min(ctx.delta, ctx.c)}")
    required = ctx.delta - i
    nxt = G.gamma(i + 1)
    best = None
    for ys in itertools.product(ctx.lifts, repeat=i):
        if G.left_normed(ys) in nxt:
            continue
        zs = tuple(x for x in ctx.lifts if x not in ys)[:required]
        if len(zs) < required:
            continue
        values = [psi_i_eval(ctx, i, ys + (z,)).value for z in zs]
        got = subgroup_log_order(ctx.tensors[i], values)
        w = Theorem1Witness(i, ys, zs, values, got, required)
        if w.holds:
            return w
        best = best or w
    if best is not None:
        return best
    raise InternalInconsistency(
        f"no commutator of weight {i} in the lifts lies outside gamma_{i + 1}")


@dataclass
class Theorem3Witness:
    s: Element
    s1: Element
    generates: bool
    chain_ok: bool                                   # s_i in gamma_i \ gamma_{i+1}
    psi_nontrivial: dict = field(default_factory=dict)   # odd i -> bool
    congruence: dict = field(default_factory=dict)       # odd i -> bool
    even_indices: list = field(default_factory=list)     # not claimed; no assertion

    @property
    def holds(self) -> bool:
        return (self.generates and self.chain_ok and all(self.psi_nontrivial.values())
                and all(self.congruence.values()))


class NoWitness(RuntimeError):
    pass


def theorem3_witness(G: PcGroup, ctx: Optional[PsiContext] = None) -> Theorem3Witness:
    """Build s, s_1 for a maximal-class group and test Psi_i at odd i.

    s avoids P_1 = C_G(gamma_2/gamma_4) and C_G(gamma_{n-2}); s_1 lies in
    P_1 outside gamma_2.  The first such elements in normal-form order are
    used.
    """
    n, p = G.log_order, G.prime
    if p == 2:
        raise PsiError("needs an odd prime")
    if n < 4 or not G.is_maximal_class():
        raise PsiError("needs a group of maximal class with n >= 4")
    ctx = ctx or PsiContext(G)
    g2, g4 = G.gamma(2), G.gamma(4)
    P1 = G.centralizer_of_section(g2, g4)
    C = G.centralizer_of_section(G.gamma(n - 2), G.trivial())
    elems = G.elements()
    s = next((x for x in elems if x not in P1 and x not in C), None)
    if s is None:
        raise NoWitness("G \\ (P_1 u C_G(gamma_{n-2})) is empty")
    s1 = next((x for x in elems if x in P1 and x not in g2), None)
    if s1 is None:
        raise NoWitness("P_1 \\ gamma_2 is empty")
    generates = G.subgroup([s, s1]).order == G.order
    c = ctx.c
    chain, si = [s1], s1
    for i in range(2, c + 1):
        si = G.commutator(si, s)
        chain.append(si)
    chain_ok = all(chain[i - 1] in G.gamma(i) and chain[i - 1] not in G.gamma(i + 1)
                   for i in range(2, c + 1))
    w = Theorem3Witness(s, s1, generates, chain_ok)
    for i in range(3, c + 1):
        if i % 2 == 0:
            w.even_indices.append(i)
            continue
        xs = (s1,) + (s,) * (i - 1) + (s1,)
        w.psi_nontrivial[i] = not psi_i_eval(ctx, i, xs).is_trivial()
        left = G.left_normed(xs[:i])
        right = G.right_normed(xs[1:])
        w.congruence[i] = ctx.section_coords(i, left) == ctx.section_coords(i, right)
    return w
