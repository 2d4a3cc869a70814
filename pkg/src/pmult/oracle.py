"""Schur multiplier orders of small groups from normalized 2-cocycles.

With trivial coefficients ``Z/n`` and ``n = |G|`` the universal coefficient
sequence gives ``|H^2(G, Z/n)| = |M(G)| |G^ab|`` and ``|Hom(G, Z/n)| = |G^ab|``.
Since ``|B^2| = n^(N-1) / |Hom(G, Z/n)|`` for normalized cochains, the
multiplier order reduces to counting cocycles:

    |M(G)| = |Z^2(G, Z/n)| / n^(N-1).

Cocycles are counted as kernels of integer matrices modulo the prime power
``n`` (see :class:`PrimePowerRowSpace`).  Nothing here depends on the pc
machinery or on any bound: the input is a bare multiplication table.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .abelian import p_valuation
from .pcgroup import PcGroup, TableGroup

DEFAULT_CAP = 243
CAP_ENV = "PMULT_ORACLE_CAP"


class OracleCapExceeded(RuntimeError):
    pass


def oracle_cap() -> int:
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_CAP


# ---------------------------------------------------------------------------
# Linear algebra over Z/p^a
# ---------------------------------------------------------------------------

def _valuations(col: np.ndarray, p: int, a: int) -> np.ndarray:
    """p-adic valuations of the entries (``a`` for zero entries)."""
    v = np.zeros(col.shape, dtype=np.int64)
    x = col.copy()
    for k in range(a):
        div = (x % p == 0)
        if not div.any():
            break
        v += div
        x = np.where(div, x // p, x)
    v[col == 0] = a
    return v


def howell_pivots(A: np.ndarray, p: int, a: int, extras: bool = True,
                  columns=None) -> list[tuple[int, int, np.ndarray]]:
    """Echelon basis of the row module of ``A`` over Z/p^a.

    Returns ``(column, valuation, row)`` triples.  Each pivot row is scaled so
    that its pivot entry is ``p^valuation``, and every pivot column is
    cleared in all other rows (pivot rows included) as far as valuations allow.
    With ``extras`` the rows ``p^(a-v) * pivot`` are fed back into the pool,
    which makes the basis a Howell basis: the module then has exactly
    ``prod p^(a - v)`` elements.
    """
    q = p ** a
    pool = np.asarray(A, dtype=np.int64) % q
    pool = pool[pool.any(axis=1)]
    ncols = pool.shape[1] if pool.ndim == 2 else 0
    pivots: list[tuple[int, int, np.ndarray]] = []
    cols = range(ncols) if columns is None else columns
    for j in cols:
        if pool.shape[0] == 0:
            break
        col = pool[:, j]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        vals = _valuations(col[nz], p, a)
        r = nz[int(np.argmin(vals))]
        v = int(vals.min())
        pv = p ** v
        row = pool[r]
        unit = int(row[j]) // pv
        row = row * pow(unit, -1, q) % q
        rest = np.delete(pool, r, axis=0)
        if rest.shape[0]:
            factor = (rest[:, j] // pv) % q
            rest = (rest - factor[:, None] * row[None, :]) % q
        # clear column j in earlier pivot rows where the valuation allows it
        for k, (cj, cv, crow) in enumerate(pivots):
            e = int(crow[j])
            if e and e % pv == 0:
                pivots[k] = (cj, cv, (crow - (e // pv) * row) % q)
        if extras and v > 0:
            extra = row * p ** (a - v) % q
            if extra.any():
                rest = np.vstack([rest, extra[None, :]])
        pool = rest[rest.any(axis=1)] if rest.shape[0] else rest
        pivots.append((j, v, row))
    return pivots


def kernel_log_order(A, p: int, a: int, ncols: Optional[int] = None) -> int:
    """log_p of the number of x in (Z/p^a)^ncols with A x = 0."""
    A = np.asarray(A, dtype=np.int64)
    if ncols is None:
        ncols = A.shape[1]
    if A.size == 0:
        return a * ncols
    piv = howell_pivots(A, p, a, extras=True)
    return a * ncols - sum(a - v for _, v, _ in piv)


class PrimePowerRowSpace:
    """Incrementally accumulated row module over Z/p^a.

    Rows with unit pivots are kept fully reduced (identity on the unit pivot
    columns) so that incoming blocks are reduced with one matrix product;
    only the residue is eliminated column by column.
    """

    def __init__(self, p: int, a: int, ncols: int):
        self.p, self.a, self.q = p, a, p ** a
        self.ncols = ncols
        self.unit_cols: list[int] = []
        self.unit_rows = np.zeros((0, ncols), dtype=np.int64)
        self.other_rows = np.zeros((0, ncols), dtype=np.int64)

    def _reduce(self, block: np.ndarray, rows: np.ndarray, cols) -> np.ndarray:
        if rows.shape[0] == 0 or block.shape[0] == 0:
            return block
        coef = block[:, cols]
        bound = (self.q - 1) ** 2 * len(cols)
        if bound < 2 ** 52:
            prodm = np.rint(coef.astype(np.float64) @ rows.astype(np.float64)).astype(np.int64)
        else:
            prodm = (coef.astype(object) @ rows.astype(object)).astype(np.int64)
        return (block - prodm % self.q) % self.q

    def add(self, block) -> None:
        block = np.asarray(block, dtype=np.int64) % self.q
        block = self._reduce(block, self.unit_rows, self.unit_cols)
        block = block[block.any(axis=1)]
        if block.shape[0] == 0:
            return
        pool = np.vstack([self.other_rows, block])
        taken = set(self.unit_cols)
        cols = [j for j in np.flatnonzero(pool.any(axis=0)) if j not in taken]
        piv = howell_pivots(pool, self.p, self.a, extras=False, columns=cols)
        new_unit = [(j, row) for j, v, row in piv if v == 0]
        others = [row for _, v, row in piv if v > 0]
        if new_unit:
            ncols = [j for j, _ in new_unit]
            nrows = np.array([row for _, row in new_unit], dtype=np.int64)
            self.unit_rows = self._reduce(self.unit_rows, nrows, ncols)
            self.unit_rows = np.vstack([self.unit_rows, nrows])
            self.unit_cols += ncols
        self.other_rows = (np.array(others, dtype=np.int64) if others
                           else np.zeros((0, self.ncols), dtype=np.int64))
        if self.other_rows.shape[0] and self.unit_cols:
            self.other_rows = self._reduce(self.other_rows, self.unit_rows, self.unit_cols)

    def log_order(self) -> int:
        """log_p of the size of the row module."""
        rows = np.vstack([self.unit_rows, self.other_rows])
        if rows.shape[0] == 0:
            return 0
        if self.other_rows.shape[0] == 0:
            return self.a * rows.shape[0]
        return sum(self.a - v for _, v, _ in howell_pivots(rows, self.p, self.a))

    def kernel_log_order(self) -> int:
        return self.a * self.ncols - self.log_order()


# ---------------------------------------------------------------------------
# Cocycle systems
# ---------------------------------------------------------------------------

@dataclass
class CocycleSystem:
    """Linear system whose solutions mod ``modulus`` are the normalized 2-cocycles.

    ``kind == "full"``: one unknown per pair of non-identity elements and one
    row ``f(x,y) + f(xy,z) - f(y,z) - f(x,yz)`` per triple of non-identity
    elements.

    ``kind == "generators"``: a normalized cocycle is determined by its values
    ``f(x, s)`` for generators ``s``, through ``f(x, ys) = f(x,y) + f(xy,s) -
    f(y,s)`` along a spanning tree of the Cayley graph.  The unknowns are those
    values and the rows are the same identity on the non-tree edges ``(y, s)``;
    the identity for all triples follows from these.
    """
    group: TableGroup = field(repr=False)
    modulus: int
    kind: str
    ncols: int
    blocks: list = field(repr=False, default_factory=list)

    @property
    def size(self) -> int:
        return self.group.order

    @property
    def nrows(self) -> int:
        return sum(b.shape[0] for b in self.blocks)

    @classmethod
    def full(cls, G: TableGroup, modulus: Optional[int] = None) -> "CocycleSystem":
        N = G.order
        n = modulus or N
        T, e = G.table, G.identity
        others = [x for x in range(N) if x != e]
        pos = {x: i for i, x in enumerate(others)}
        ncols = (N - 1) ** 2

        def var(x, y):
            return None if x == e or y == e else pos[x] * (N - 1) + pos[y]

        blocks = []
        for x in others:
            rows = np.zeros(((N - 1) ** 2, ncols), dtype=np.int64)
            r = 0
            for y in others:
                xy = int(T[x, y])
                for z in others:
                    yz = int(T[y, z])
                    for u, w, c in ((x, y, 1), (xy, z, 1), (y, z, -1), (x, yz, -1)):
                        k = var(u, w)
                        if k is not None:
                            rows[r, k] += c
                    r += 1
            blocks.append(rows % n)
        return cls(G, n, "full", ncols, blocks)

    @classmethod
    def generator_reduced(cls, G: TableGroup, gens=None,
                          modulus: Optional[int] = None) -> "CocycleSystem":
        N = G.order
        n = modulus or N
        T, e = G.table, G.identity
        gens = list(gens) if gens is not None else G.minimal_generators()
        S = len(gens)
        others = [x for x in range(N) if x != e]
        pos = {x: i for i, x in enumerate(others)}
        ncols = (N - 1) * S

        # unit vectors of the unknowns f(z, s); f(e, s) = 0
        E = np.zeros((N, S, ncols), dtype=np.int32)
        for z in others:
            for k in range(S):
                E[z, k, pos[z] * S + k] = 1

        # spanning tree: order[w] reached as parent[w] * gens[edge[w]]
        parent, edge = {e: None}, {e: None}
        order = [e]
        queue = deque([e])
        while queue:
            y = queue.popleft()
            for k, s in enumerate(gens):
                w = int(T[y, s])
                if w not in parent:
                    parent[w], edge[w] = y, k
                    order.append(w)
                    queue.append(w)
        if len(order) != N:
            raise ValueError("generators do not generate the group")

        # F[x, w] = linear form of f(x, w)
        F = np.zeros((N, N, ncols), dtype=np.int32)
        for w in order[1:]:
            y, k = parent[w], edge[w]
            F[:, w] = (F[:, y] + E[T[:, y], k] - E[y, k][None, :]) % n

        xs = np.array(others)
        blocks = []
        for y in range(N):
            for k, s in enumerate(gens):
                w = int(T[y, s])
                if y == e or (parent.get(w) == y and edge[w] == k):
                    continue
                rows = F[xs, y] + E[T[xs, y], k] - E[y, k][None, :] - F[xs, w]
                blocks.append(rows % n)
        return cls(G, n, "generators", ncols, blocks)

    def kernel_log_order(self) -> int:
        """log_p of the number of solutions mod the modulus."""
        p = _prime_of(self.modulus)
        a = p_valuation(self.modulus, p) if self.modulus > 1 else 0
        if a == 0:
            return 0
        space = PrimePowerRowSpace(p, a, self.ncols)
        batch, size = [], 0
        for b in self.blocks:
            batch.append(b)
            size += b.shape[0]
            if size >= 1024:
                space.add(np.vstack(batch))
                batch, size = [], 0
        if batch:
            space.add(np.vstack(batch))
        return space.kernel_log_order()


def _prime_of(n: int) -> int:
    for p in range(2, n + 1):
        if n % p == 0:
            if any(n % q == 0 for q in range(2, p)):
                break
            m = n
            while m % p == 0:
                m //= p
            if m != 1:
                raise ValueError(f"modulus {n} is not a prime power")
            return p
    raise ValueError(f"modulus {n} is not a prime power")


def _as_table(G: Union[TableGroup, PcGroup]) -> TableGroup:
    return G.to_table() if isinstance(G, PcGroup) else G


def _check_cap(G: TableGroup, cap: Optional[int]) -> None:
    cap = oracle_cap() if cap is None else cap
    if G.order > cap:
        raise OracleCapExceeded(f"|G| = {G.order} exceeds the oracle cap {cap}")


def _abelianization_log_order(G: TableGroup, p: int) -> int:
    return p_valuation(G.order // len(G.derived_subgroup()), p) if G.order > 1 else 0


def _cocycle_log_order(G: TableGroup, system: str) -> int:
    if system == "full":
        return CocycleSystem.full(G).kernel_log_order()
    if system == "generators":
        return CocycleSystem.generator_reduced(G).kernel_log_order()
    raise ValueError(f"unknown cocycle system {system!r}")


def h2_log_order(G: Union[TableGroup, PcGroup], cap: Optional[int] = None,
                 system: str = "generators") -> int:
    """log_p |H^2(G, Z/n)|, trivial action, n = |G|, as |Z^2| / |B^2|.

    |B^2| = |normalized 1-cochains| / |Hom(G, Z/n)| = n^(N-1) / |G^ab|.
    """
    G = _as_table(G)
    _check_cap(G, cap)
    N = G.order
    if N == 1:
        return 0
    p = _prime_of(N)
    a = p_valuation(N, p)
    z2 = _cocycle_log_order(G, system)
    b2 = a * (N - 1) - _abelianization_log_order(G, p)
    return z2 - b2


def h2_order(G: Union[TableGroup, PcGroup], cap: Optional[int] = None,
             system: str = "generators") -> int:
    G = _as_table(G)
    if G.order == 1:
        return 1
    return _prime_of(G.order) ** h2_log_order(G, cap, system)


def multiplier_exponent(G: Union[TableGroup, PcGroup], cap: Optional[int] = None,
                        system: str = "generators") -> int:
    """log_p |M(G)| = log_p |H^2(G, Z/n)| - log_p |G^ab|."""
    G = _as_table(G)
    if G.order == 1:
        _check_cap(G, cap)
        return 0
    return h2_log_order(G, cap, system) - _abelianization_log_order(G, _prime_of(G.order))


def multiplier_order(G: Union[TableGroup, PcGroup], cap: Optional[int] = None,
                     system: str = "generators") -> int:
    G = _as_table(G)
    if G.order == 1:
        return 1
    return _prime_of(G.order) ** multiplier_exponent(G, cap, system)
