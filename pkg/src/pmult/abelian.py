"""Finite abelian p-groups, integer Smith normal form and tensor products.

Everything here is exact integer arithmetic.  A finite abelian p-group is
stored by its invariant factors ``p**a_1 >= p**a_2 >= ... >= p**a_r``.
Elements of a tensor product ``A (x) B`` are stored as integer grids in the
basis ``e_i (x) f_j`` whose cyclic orders follow the min rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable, Optional, Sequence


class PrimeMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

@dataclass
class SmithForm:
    """Result of :func:`smith_normal_form`.

    ``U @ M @ V == D`` where ``D`` is diagonal with ``d_1 | d_2 | ...``.
    ``U``/``V`` are ``None`` when not requested.  ``V_inv`` is the inverse
    of ``V`` and is tracked alongside it.
    """
    diagonal: list[int]
    shape: tuple[int, int]
    U: Optional[list[list[int]]] = None
    V: Optional[list[list[int]]] = None
    V_inv: Optional[list[list[int]]] = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def matrix(self) -> list[list[int]]:
        m, n = self.shape
        D = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.diagonal):
            D[i][i] = d
        return D


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]], left: bool = True,
                      right: bool = True) -> SmithForm:
    """Smith normal form of an integer matrix.

    Pass ``left=False`` for tall relation matrices where the row transform
    would be too large to carry around.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if left else None
    V = _identity(n) if right else None
    Vi = _identity(n) if right else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        rs, rd = A[src], A[dst]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        if U is not None:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] += q * us[c]

    def add_col(dst, src, q):
        # col_dst += q * col_src ; V_inv gets the inverse row operation
        if q == 0:
            return
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vd, vs = Vi[dst], Vi[src]
            for c in range(n):
                if vd[c]:
                    vs[c] -= q * vd[c]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                if row[j] and (best is None or abs(row[j]) < best[0]):
                    best = (abs(row[j]), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            piv = A[t][t]
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % piv for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)

    diag = [A[i][i] for i in range(min(m, n))]
    return SmithForm(diag, (m, n), U, V, Vi)


# ---------------------------------------------------------------------------
# Finite abelian p-groups
# ---------------------------------------------------------------------------

def p_valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def is_power_of(x: int, p: int) -> bool:
    if x < 1:
        return False
    while x % p == 0:
        x //= p
    return x == 1


@dataclass
class FinAb:
    """Finite abelian p-group ``C_{p^a_1} x ... x C_{p^a_r}``, a_1 >= ... >= a_r >= 1.

    When the group is a section of some ambient group, ``basis`` holds lifts of
    the cyclic generators and ``dlog`` maps an ambient element to its
    coordinate vector.
    """
    prime: int
    exponents: tuple[int, ...]
    basis: Optional[tuple] = field(default=None, repr=False, compare=False)
    dlog: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        exps = tuple(sorted((int(a) for a in self.exponents if a), reverse=True))
        if any(a < 0 for a in exps):
            raise ValueError("negative exponent")
        self.exponents = exps

    @classmethod
    def from_orders(cls, p: int, orders: Sequence[int]) -> "FinAb":
        exps = []
        for o in orders:
            if not is_power_of(o, p):
                raise PrimeMismatch(f"{o} is not a power of {p}")
            exps.append(p_valuation(o, p) if o > 1 else 0)
        return cls(p, tuple(exps))

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.prime ** a for a in self.exponents)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def log_order(self) -> int:
        return sum(self.exponents)

    @property
    def order(self) -> int:
        return self.prime ** self.log_order

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(v) % o for v, o in zip(vec, self.orders))

    def is_elementary(self) -> bool:
        return all(a == 1 for a in self.exponents)

    def __str__(self):
        if not self.exponents:
            return "1"
        return " x ".join(f"C{o}" for o in self.orders)


def multiplier_abelian(A: FinAb) -> FinAb:
    """Schur multiplier of a finite abelian p-group.

    M(C_{p^a_1} x ... x C_{p^a_r}) is the sum over i < j of C_{p^min(a_i, a_j)}.
    """
    a = A.exponents
    exps = [min(a[i], a[j]) for i in range(len(a)) for j in range(i + 1, len(a))]
    return FinAb(A.prime, tuple(exps))


def lemma21_bound(A: FinAb) -> Fraction:
    """Upper bound ``(d-1)(n - (a_1 - a_d)) / 2`` on log_p |M(A)|."""
    a = A.exponents
    d = len(a)
    if d <= 1:
        return Fraction(0)
    n = sum(a)
    return Fraction((d - 1) * (n - (a[0] - a[-1])), 2)


# ---------------------------------------------------------------------------
# Tensor products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TensorGroup:
    left: FinAb
    right: FinAb

    def __post_init__(self):
        if self.left.prime != self.right.prime:
            raise PrimeMismatch("tensor factors over different primes")

    @property
    def prime(self) -> int:
        return self.left.prime

    @property
    def grid_exponents(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(min(a, b) for b in self.right.exponents)
                     for a in self.left.exponents)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Flattened cyclic orders of the grid, row-major."""
        p = self.prime
        return tuple(p ** e for row in self.grid_exponents for e in row)

    @property
    def log_order(self) -> int:
        return sum(e for row in self.grid_exponents for e in row)

    @property
    def order(self) -> int:
        return self.prime ** self.log_order

    def zero(self) -> "TensorElement":
        return TensorElement(self, (0,) * len(self.moduli))

    def as_finab(self) -> FinAb:
        return FinAb(self.prime, tuple(e for row in self.grid_exponents for e in row))


@dataclass(frozen=True)
class TensorElement:
    group: TensorGroup = field(compare=False, repr=False)
    grid: tuple[int, ...]

    def __add__(self, other: "TensorElement") -> "TensorElement":
        mods = self.group.moduli
        return TensorElement(self.group, tuple((x + y) % m for x, y, m in
                                               zip(self.grid, other.grid, mods)))

    def __neg__(self) -> "TensorElement":
        mods = self.group.moduli
        return TensorElement(self.group, tuple(-x % m for x, m in zip(self.grid, mods)))

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __mul__(self, k: int) -> "TensorElement":
        mods = self.group.moduli
        return TensorElement(self.group, tuple(k * x % m for x, m in zip(self.grid, mods)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.grid)


def tensor(A: FinAb, B: FinAb) -> TensorGroup:
    return TensorGroup(A, B)


def tensor_elem(T: TensorGroup, a: Sequence[int], b: Sequence[int]) -> TensorElement:
    """The basic tensor a (x) b given coordinate vectors of a in A and b in B."""
    mods = T.moduli
    nb = T.right.rank
    grid = tuple(a[i] * b[j] % mods[i * nb + j]
                 for i in range(T.left.rank) for j in range(nb))
    return TensorElement(T, grid)


def subgroup_log_order(T: TensorGroup, elements: Sequence[TensorElement]) -> int:
    """log_p of the order of the subgroup of T generated by ``elements``."""
    mods = T.moduli
    g = len(mods)
    if g == 0:
        return 0
    rows = [list(e.grid) for e in elements if not e.is_zero()]
    if not rows:
        return 0
    rows += [[m if i == j else 0 for j in range(g)] for i, m in enumerate(mods)]
    snf = smith_normal_form(rows, left=False, right=False)
    index = prod(d for d in snf.diagonal if d)
    return p_valuation(prod(mods) // index, T.prime) if prod(mods) != index else 0


def subgroup_order(T: TensorGroup, elements: Sequence[TensorElement]) -> int:
    return T.prime ** subgroup_log_order(T, elements)
