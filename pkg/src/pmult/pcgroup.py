"""Finite p-groups given by weighted power-commutator presentations.

Conventions: ``[x, y] = x^-1 y^-1 x y`` and ``x^y = y^-1 x y``.  A presentation
on generators ``g_1..g_m`` (0-based internally) gives, for every ``i``, the
normal word ``g_i^{r_i}`` and, for ``j > i``, the normal word ``[g_j, g_i]``.
Right-hand sides of ``g_i^{r_i}`` may only involve generators after ``g_i``;
those of ``[g_j, g_i]`` only generators after ``g_j``.  That makes collection
terminate, and every element has a unique normal form given by its exponent
vector.

Structural computations (subgroups, series, centralizers, sections) enumerate
elements and are capped at :data:`MAX_ENUMERATION` elements.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .abelian import FinAb, is_power_of, smith_normal_form

MAX_ENUMERATION = 10 ** 5
EXHAUSTIVE_CHECK_LIMIT = 10 ** 4

Element = tuple  # exponent vector


class PresentationError(ValueError):
    """Syntactically invalid presentation (bad exponent, weight violation, ...)."""


class InconsistentPresentation(ValueError):
    """Collection does not define a group of the expected order."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class GroupTooLarge(RuntimeError):
    pass


class NotNormal(ValueError):
    pass


@dataclass(frozen=True)
class PcPresentation:
    """Power-commutator presentation.

    ``powers[i]`` and ``comms[(j, i)]`` are exponent vectors of length
    ``ngens``; missing entries mean the trivial word.
    """
    prime: int
    rel_orders: tuple[int, ...]
    powers: Mapping[int, tuple[int, ...]] = field(default_factory=dict)
    comms: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        p, orders, m = self.prime, tuple(self.rel_orders), len(self.rel_orders)
        object.__setattr__(self, "rel_orders", orders)
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise PresentationError(f"{p} is not prime")
        for i, o in enumerate(orders):
            if o < p or not is_power_of(o, p):
                raise PresentationError(f"relative order of g{i + 1} is {o}, not a power of {p}")

        def check_word(word, least, what):
            if len(word) != m:
                raise PresentationError(f"{what}: word has length {len(word)}, expected {m}")
            for t, e in enumerate(word):
                if not 0 <= e < orders[t]:
                    raise PresentationError(f"{what}: exponent {e} of g{t + 1} out of range")
                if e and t <= least:
                    raise PresentationError(
                        f"{what}: involves g{t + 1}, but only generators after "
                        f"g{least + 1} are allowed")
            return tuple(int(e) for e in word)

        powers = {}
        for i, w in self.powers.items():
            if not 0 <= i < m:
                raise PresentationError(f"power relation for unknown generator {i + 1}")
            w = check_word(w, i, f"power relation g{i + 1}^{orders[i]}")
            if any(w):
                powers[i] = w
        comms = {}
        for (j, i), w in self.comms.items():
            if not 0 <= i < j < m:
                raise PresentationError(
                    f"commutator key ({j + 1},{i + 1}) must satisfy m >= j > i >= 1")
            w = check_word(w, j, f"commutator [g{j + 1}, g{i + 1}]")
            if any(w):
                comms[(j, i)] = w
        object.__setattr__(self, "powers", powers)
        object.__setattr__(self, "comms", comms)

    @property
    def ngens(self) -> int:
        return len(self.rel_orders)

    @property
    def order(self) -> int:
        return prod(self.rel_orders)

    def power_rhs(self, i: int) -> tuple[int, ...]:
        return self.powers.get(i, (0,) * self.ngens)

    def comm_rhs(self, j: int, i: int) -> tuple[int, ...]:
        return self.comms.get((j, i), (0,) * self.ngens)

    @classmethod
    def from_relations(cls, prime, rel_orders, powers=None, comms=None):
        """Build from sparse words ``[(gen, exp), ...]`` using 0-based generators."""
        m = len(rel_orders)

        def dense(word):
            v = [0] * m
            for g, e in word:
                if not 0 <= g < m:
                    raise PresentationError(f"generator index {g + 1} out of range")
                v[g] += e
            return tuple(x % rel_orders[t] for t, x in enumerate(v))

        return cls(prime, tuple(rel_orders),
                   {i: dense(w) for i, w in (powers or {}).items()},
                   {k: dense(w) for k, w in (comms or {}).items()})


class PcGroup:
    """Group defined by a consistent :class:`PcPresentation`.

    Elements are exponent tuples.  Construction runs the consistency check
    unless ``check=False``.
    """

    def __init__(self, pres: PcPresentation, check: bool = True, name: str = ""):
        self.pres = pres
        self.name = name
        self.prime = pres.prime
        self.ngens = pres.ngens
        self.orders = pres.rel_orders
        self.identity = (0,) * self.ngens
        self._cache: dict = {}
        self._memo: dict = {}
        if check:
            violation = check_consistency(pres)
            if violation is not None:
                raise InconsistentPresentation(violation[0], violation[1])

    def __repr__(self):
        return f"PcGroup({self.name or 'order ' + str(self.order)})"

    # -- basic arithmetic ------------------------------------------------

    @property
    def order(self) -> int:
        return self.pres.order

    @property
    def log_order(self) -> int:
        o, n = self.order, 0
        while o > 1:
            o //= self.prime
            n += 1
        return n

    def gen(self, i: int) -> Element:
        return tuple(int(t == i) for t in range(self.ngens))

    @property
    def gens(self) -> list[Element]:
        return [self.gen(i) for i in range(self.ngens)]

    def _times_gen(self, x: Element, k: int) -> Element:
        # x * g_k: move g_k left past the tail g_{k+1}^{e_{k+1}} ... g_m^{e_m}
        key = (x, k)
        y = self._cache.get(key)
        if y is not None:
            return y
        e = list(x)
        tail = e[k + 1:]
        e[k + 1:] = [0] * len(tail)
        e[k] += 1
        if e[k] == self.orders[k]:
            e[k] = 0
            y = self._times_vec(tuple(e), self.pres.power_rhs(k))
        else:
            y = tuple(e)
        for j, ej in enumerate(tail, start=k + 1):
            c = self.pres.comms.get((j, k))
            for _ in range(ej):
                y = self._times_gen(y, j)
                if c is not None:
                    y = self._times_vec(y, c)
        self._cache[key] = y
        return y

    def _times_vec(self, x: Element, word: Sequence[int]) -> Element:
        for t, a in enumerate(word):
            for _ in range(a):
                x = self._times_gen(x, t)
        return x

    def mul(self, x: Element, y: Element) -> Element:
        return self._times_vec(x, y)

    def inverse(self, x: Element) -> Element:
        r, y = x, self.identity
        for k in range(self.ngens):
            a = r[k]
            if a:
                g = (0,) * k + (self.orders[k] - a,) + (0,) * (self.ngens - k - 1)
                r = self.mul(r, g)
                y = self.mul(y, g)
        return y

    def power(self, x: Element, n: int) -> Element:
        if n < 0:
            x, n = self.inverse(x), -n
        result = self.identity
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def commutator(self, x: Element, y: Element) -> Element:
        return self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y))

    def conjugate(self, x: Element, y: Element) -> Element:
        """x^y = y^-1 x y."""
        return self.mul(self.mul(self.inverse(y), x), y)

    def collect(self, word: Iterable[int]) -> Element:
        """Normal form of a word of signed 1-based generator indices.

        ``[1, -2]`` means ``g_1 g_2^-1``.
        """
        x = self.identity
        for letter in word:
            if letter == 0 or abs(letter) > self.ngens:
                raise ValueError(f"bad generator letter {letter}")
            g = self.gen(abs(letter) - 1)
            x = self.mul(x, g if letter > 0 else self.inverse(g))
        return x

    def left_normed(self, xs: Sequence[Element]) -> Element:
        """[...[[x1, x2], x3], ..., xk]."""
        if len(xs) < 2:
            raise ValueError("a commutator needs at least two entries")
        c = xs[0]
        for x in xs[1:]:
            c = self.commutator(c, x)
        return c

    def right_normed(self, xs: Sequence[Element]) -> Element:
        """[x1, [x2, ..., [x_{k-1}, xk]...]]."""
        if len(xs) < 2:
            raise ValueError("a commutator needs at least two entries")
        c = xs[-1]
        for x in reversed(xs[:-1]):
            c = self.commutator(x, c)
        return c

    def is_abelian(self) -> bool:
        gs = self.gens
        return all(self.commutator(a, b) == self.identity
                   for a, b in itertools.combinations(gs, 2))

    # -- enumeration ------------------------------------------------------

    def _require_enumerable(self):
        if self.order > MAX_ENUMERATION:
            raise GroupTooLarge(f"|G| = {self.order} exceeds enumeration cap {MAX_ENUMERATION}")

    def elements(self) -> list[Element]:
        self._require_enumerable()
        return list(itertools.product(*(range(o) for o in self.orders)))

    def index(self, x: Element) -> int:
        i = 0
        for e, o in zip(x, self.orders):
            i = i * o + e
        return i

    def element_order(self, x: Element) -> int:
        n, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            n += 1
        return n

    def subgroup(self, gens: Iterable[Element]) -> "Subgroup":
        return Subgroup.generated(self, gens)

    def whole(self) -> "Subgroup":
        if "whole" not in self._memo:
            self._require_enumerable()
            self._memo["whole"] = Subgroup(self, tuple(self.gens), frozenset(self.elements()))
        return self._memo["whole"]

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (), frozenset([self.identity]))

    def normal_closure(self, gens: Iterable[Element]) -> "Subgroup":
        gens = [g for g in gens if g != self.identity]
        H = self.subgroup(gens)
        while True:
            new = []
            for h in H.gens:
                for g in self.gens:
                    c = self.conjugate(h, g)
                    if c not in H and c not in new:
                        new.append(c)
            if not new:
                return H
            H = H.extend(new)

    def is_normal(self, N: "Subgroup") -> bool:
        return all(self.conjugate(h, g) in N for h in N.gens for g in self.gens)

    # -- series, center, generators --------------------------------------

    def lower_central_series(self) -> list["Subgroup"]:
        """[gamma_1, gamma_2, ..., 1]."""
        if "lcs" in self._memo:
            return self._memo["lcs"]
        series = [self.whole()]
        while series[-1].order > 1:
            prev = series[-1]
            gens = {self.commutator(x, g) for x in prev.gens for g in self.gens}
            nxt = self.normal_closure(sorted(gens))
            if nxt.order == prev.order:
                raise InconsistentPresentation("lower central series stalls: group is not nilpotent")
            series.append(nxt)
        self._memo["lcs"] = series
        return series

    def gamma(self, i: int) -> "Subgroup":
        """gamma_i(G), 1-based; trivial beyond the class."""
        lcs = self.lower_central_series()
        return lcs[i - 1] if i <= len(lcs) else lcs[-1]

    @property
    def nilpotency_class(self) -> int:
        return len(self.lower_central_series()) - 1

    def is_maximal_class(self) -> bool:
        n = self.log_order
        return n >= 2 and self.nilpotency_class == n - 1

    def center(self) -> "Subgroup":
        if "center" not in self._memo:
            gs = self.gens
            elems = [x for x in self.elements()
                     if all(self.mul(x, g) == self.mul(g, x) for g in gs)]
            self._memo["center"] = Subgroup.from_elements(self, elems)
        return self._memo["center"]

    def centralizer_of_section(self, A: "Subgroup", B: "Subgroup") -> "Subgroup":
        """C_G(A/B) = {g : [g, a] in B for all a in A}; B normal in G."""
        if not self.is_normal(B):
            raise NotNormal("the denominator of the section must be normal")
        elems = [g for g in self.elements()
                 if all(self.commutator(g, a) in B for a in A.gens)]
        return Subgroup.from_elements(self, elems)

    def frattini(self) -> "Subgroup":
        if "frattini" not in self._memo:
            g2 = self.gamma(2)
            powers = [self.power(g, self.prime) for g in self.gens]
            self._memo["frattini"] = self.normal_closure(list(g2.gens) + powers)
        return self._memo["frattini"]

    def min_generators(self) -> int:
        """d(G) = log_p |G / Phi(G)|."""
        return _logp(self.order // self.frattini().order, self.prime)

    def join(self, *subgroups: "Subgroup") -> "Subgroup":
        return self.subgroup([g for H in subgroups for g in H.gens])

    def quotient(self, N: "Subgroup") -> tuple["TableGroup", dict]:
        """G/N as a table group plus the projection ``element -> coset index``."""
        if not self.is_normal(N):
            raise NotNormal("quotient by a non-normal subgroup")
        label, reps = coset_labels(self, self.elements(), N)
        k = len(reps)
        table = np.empty((k, k), dtype=np.int64)
        for a, x in enumerate(reps):
            for b, y in enumerate(reps):
                table[a, b] = label[self.mul(x, y)]
        return TableGroup(table, elements=reps, prime=self.prime), label

    def abelianization(self) -> tuple[FinAb, dict]:
        """G^ab as a FinAb (with dlog) plus the projection element -> coordinates."""
        A = section(self, self.whole(), self.gamma(2))
        return A, {x: A.dlog(x) for x in self.elements()}

    def to_table(self) -> "TableGroup":
        """Cayley table over the normal forms (index order)."""
        self._require_enumerable()
        elems = self.elements()
        N = len(elems)
        rmul = np.empty((self.ngens, N), dtype=np.int64)
        for t, g in enumerate(self.gens):
            rmul[t] = [self.index(self._times_gen(x, t)) for x in elems]
        # column y = column parent(y) pushed through right multiplication by g_t
        table = np.empty((N, N), dtype=np.int64)
        table[:, 0] = np.arange(N)
        for y in elems[1:]:
            t = max(i for i, e in enumerate(y) if e)
            parent = list(y)
            parent[t] -= 1
            table[:, self.index(y)] = rmul[t][table[:, self.index(tuple(parent))]]
        return TableGroup(table, elements=elems, prime=self.prime)


@dataclass(frozen=True, eq=False)
class Subgroup:
    group: PcGroup = field(repr=False)
    gens: tuple
    elements: frozenset = field(repr=False)

    @classmethod
    def generated(cls, G: PcGroup, gens: Iterable[Element]) -> "Subgroup":
        gens = tuple(dict.fromkeys(g for g in gens if g != G.identity))
        return cls(G, gens, _closure(G, gens, {G.identity}))

    @classmethod
    def from_elements(cls, G: PcGroup, elems: Iterable[Element]) -> "Subgroup":
        elems = sorted(set(elems))
        gens, seen = [], {G.identity}
        for x in elems:
            if x not in seen:
                gens.append(x)
                seen = _closure(G, gens, seen, new=[x])
        if len(seen) != len(elems):
            raise ValueError("element set is not a subgroup")
        return cls(G, tuple(gens), frozenset(seen))

    def extend(self, extra: Sequence[Element]) -> "Subgroup":
        extra = [g for g in extra if g not in self.elements]
        if not extra:
            return self
        gens = self.gens + tuple(extra)
        return Subgroup(self.group, gens, _closure(self.group, gens, self.elements, new=extra))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def sorted_elements(self) -> list:
        return sorted(self.elements)


def _closure(G: PcGroup, gens, start, new=None) -> frozenset:
    """Smallest set containing ``start`` closed under right multiplication by gens.

    ``start`` must already be closed under the gens not listed in ``new``.
    """
    seen = set(start)
    gens = list(gens)
    queue = deque()
    if new is None:
        queue.extend(seen)
    else:
        for x in list(seen):
            for g in new:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.mul(x, g)
            if y not in seen:
                if len(seen) >= MAX_ENUMERATION:
                    raise GroupTooLarge("subgroup closure exceeds enumeration cap")
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _logp(n: int, p: int) -> int:
    k = 0
    while n > 1:
        if n % p:
            raise ValueError(f"{n} is not a power of {p}")
        n //= p
        k += 1
    return k


def coset_labels(G: PcGroup, elements: Iterable[Element], N: Subgroup):
    """Label right cosets xN of the elements; returns (label dict, representatives)."""
    label, reps = {}, []
    nelems = N.sorted_elements()
    for x in sorted(elements):
        if x in label:
            continue
        idx = len(reps)
        reps.append(x)
        for n in nelems:
            label[G.mul(x, n)] = idx
    return label, reps


def section(G: PcGroup, A: Subgroup, B: Subgroup, gens: Optional[Sequence[Element]] = None) -> FinAb:
    """The abelian section A/B (B normal in A, A/B abelian) with a dlog map.

    Coordinates come from a Smith normal form of the relation lattice read off
    a spanning tree of the Cayley graph of A/B.
    """
    if not B <= A:
        raise ValueError("section denominator is not contained in the numerator")
    gens = list(gens if gens is not None else A.gens)
    label, reps = coset_labels(G, A.elements, B)
    r = len(gens)
    k = len(reps)
    vec = {label[G.identity]: (0,) * r}
    tree_rep = {label[G.identity]: G.identity}
    queue = deque([label[G.identity]])
    relations = []
    while queue:
        u = queue.popleft()
        for i, a in enumerate(gens):
            y = G.mul(tree_rep[u], a)
            v = label[y]
            step = tuple(x + (t == i) for t, x in enumerate(vec[u]))
            if v not in vec:
                vec[v] = step
                tree_rep[v] = y
                queue.append(v)
            else:
                rel = [s - w for s, w in zip(step, vec[v])]
                if any(rel):
                    relations.append(rel)
    if len(vec) != k:
        raise ValueError("generators do not generate the section")
    # abelian check: generators commute modulo B
    for a, b in itertools.combinations(gens, 2):
        if G.commutator(a, b) not in B:
            raise ValueError("section is not abelian")
    if r == 0:
        return FinAb(G.prime, (), basis=(), dlog=lambda x: ())
    if not relations:
        relations = [[0] * r]
    snf = smith_normal_form(relations, left=False, right=True)
    diag = snf.diagonal + [0] * (r - len(snf.diagonal))
    if any(d == 0 for d in diag):
        raise ValueError("relation lattice is not of full rank")
    keep = [i for i in sorted(range(r), key=lambda i: -diag[i]) if diag[i] > 1]
    V = snf.V
    coords = {}
    for u, vv in vec.items():
        full = [sum(vv[s] * V[s][i] for s in range(r)) for i in range(r)]
        coords[u] = tuple(full[i] % diag[i] for i in keep)
    basis = []
    for i in keep:
        x = G.identity
        for s, e in enumerate(snf.V_inv[i]):
            if e:
                x = G.mul(x, G.power(gens[s], e))
        basis.append(x)
    exps = tuple(_logp(diag[i], G.prime) for i in keep)

    def dlog(x, _label=label, _coords=coords):
        try:
            return _coords[_label[x]]
        except KeyError:
            raise ValueError("element does not lie in the section numerator") from None

    return FinAb(G.prime, exps, basis=tuple(basis), dlog=dlog)


class TableGroup:
    """A finite group given by an index-based multiplication table."""

    def __init__(self, table, elements=None, prime: Optional[int] = None, verify: bool = True):
        self.table = np.asarray(table, dtype=np.int64)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        self.elements = list(elements) if elements is not None else list(range(n))
        self.prime = prime
        ids = [e for e in range(n) if np.array_equal(self.table[e], np.arange(n))]
        if not ids:
            raise ValueError("table has no identity element")
        self.identity = ids[0]
        if verify and not self.is_latin():
            raise ValueError("table is not a Latin square")
        self.inverse = np.argmax(self.table == self.identity, axis=1)
        if verify and not self.check_associativity(samples=min(n ** 3, 2000)):
            raise ValueError("table is not associative")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def is_latin(self) -> bool:
        n = self.order
        full = np.arange(n)
        return all(np.array_equal(np.sort(self.table[i]), full) and
                   np.array_equal(np.sort(self.table[:, i]), full) for i in range(n))

    def check_associativity(self, samples: Optional[int] = None, seed: int = 0) -> bool:
        """Full check when ``samples`` is None, else random spot checks."""
        T, n = self.table, self.order
        if samples is None:
            for a in range(n):
                # (a b) c == a (b c) for all b, c
                if not np.array_equal(T[T[a]], T[a][T]):
                    return False
            return True
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        return bool(np.all(T[T[a, b], c] == T[a, T[b, c]]))

    def relabel(self, perm: Sequence[int]) -> "TableGroup":
        """Same group with element ``i`` renamed ``perm[i]``."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        T = perm[self.table[np.ix_(inv, inv)]]
        elems = [self.elements[i] for i in inv]
        return TableGroup(T, elements=elems, prime=self.prime, verify=False)

    def closure(self, gens: Iterable[int], start: Iterable[int] = ()) -> set[int]:
        seen = set(start) | {self.identity}
        gens = list(gens)
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def commutator(self, a: int, b: int) -> int:
        T, inv = self.table, self.inverse
        return int(T[T[inv[a], inv[b]], T[a, b]])

    def derived_subgroup(self) -> set[int]:
        n = self.order
        comms = {self.commutator(a, b) for a in range(n) for b in range(a + 1, n)}
        return self.closure(comms)

    def minimal_generators(self) -> list[int]:
        """A generating set; minimal when the group is a p-group with ``prime`` set."""
        n = self.order
        base: set[int] = {self.identity}
        if self.prime is not None:
            powers = set()
            for x in range(n):
                y = x
                for _ in range(self.prime - 1):
                    y = int(self.table[y, x])
                powers.add(y)
            base = self.closure(self.derived_subgroup() | powers)
        gens: list[int] = []
        span = base
        for x in range(n):
            if x not in span:
                gens.append(x)
                span = self.closure(list(base) + gens)
        if len(self.closure(gens)) != n:
            raise ValueError("chosen elements do not generate the group")
        return gens


# ---------------------------------------------------------------------------
# Consistency
# ---------------------------------------------------------------------------

def _gen_power(G: PcGroup, i: int, e: int) -> Element:
    return tuple(e if t == i else 0 for t in range(G.ngens))


def check_consistency(pres: PcPresentation) -> Optional[tuple[str, tuple]]:
    """Return None if consistent, else ``(description, overlap)`` of the first violation.

    Runs the standard overlap tests for weighted presentations, then, for
    groups of at most :data:`EXHAUSTIVE_CHECK_LIMIT` elements, verifies that
    right multiplication by generators is a permutation action satisfying
    every defining relation, which forces the group order to be exactly the
    product of the relative orders.
    """
    G = PcGroup(pres, check=False)
    m, r = G.ngens, G.orders
    g = G.gens
    mul = G.mul

    for k in range(m):
        for j in range(k):
            for i in range(j):
                lhs = mul(g[k], mul(g[j], g[i]))
                rhs = mul(mul(g[k], g[j]), g[i])
                if lhs != rhs:
                    return (f"overlap g{k + 1} g{j + 1} g{i + 1}: {lhs} != {rhs}", (k + 1, j + 1, i + 1))
    for j in range(m):
        for i in range(j):
            # g_j^r g_i  vs  g_j^(r-1) (g_j g_i)
            a = mul(_gen_power(G, j, r[j] - 1), mul(g[j], g[i]))
            b = mul(pres.power_rhs(j), g[i])
            if a != b:
                return (f"overlap g{j + 1}^{r[j]} g{i + 1}: {a} != {b}", (j + 1, j + 1, i + 1))
            # g_j g_i^r  vs  (g_j g_i) g_i^(r-1)
            a = mul(mul(g[j], g[i]), _gen_power(G, i, r[i] - 1))
            b = mul(g[j], pres.power_rhs(i))
            if a != b:
                return (f"overlap g{j + 1} g{i + 1}^{r[i]}: {a} != {b}", (j + 1, i + 1, i + 1))
    for i in range(m):
        a = mul(g[i], pres.power_rhs(i))
        b = mul(pres.power_rhs(i), g[i])
        if a != b:
            return (f"overlap g{i + 1}^{r[i] + 1}: {a} != {b}", (i + 1, i + 1, i + 1))

    if G.order <= EXHAUSTIVE_CHECK_LIMIT:
        return _check_regular_action(G)
    return None


def _check_regular_action(G: PcGroup) -> Optional[tuple[str, tuple]]:
    elems = G.elements()
    N = len(elems)
    perms = []
    for t in range(G.ngens):
        p = np.array([G.index(G._times_gen(x, t)) for x in elems], dtype=np.int64)
        if len(np.unique(p)) != N:
            return (f"right multiplication by g{t + 1} is not a bijection", (t + 1,))
        perms.append(p)

    def act(word):
        # permutation of the normal word, acting on the right
        q = np.arange(N)
        for t, a in enumerate(word):
            for _ in range(a):
                q = perms[t][q]
        return q

    inv = [np.argsort(p) for p in perms]
    for i in range(G.ngens):
        q = np.arange(N)
        for _ in range(G.orders[i]):
            q = perms[i][q]
        if not np.array_equal(q, act(G.pres.power_rhs(i))):
            return (f"relation g{i + 1}^{G.orders[i]} fails in the regular action", (i + 1,))
    for j in range(G.ngens):
        for i in range(j):
            # [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i
            q = inv[i][inv[j][np.arange(N)]]
            q = perms[i][perms[j][q]]
            if not np.array_equal(q, act(G.pres.comm_rhs(j, i))):
                return (f"relation [g{j + 1}, g{i + 1}] fails in the regular action", (j + 1, i + 1))
    return None
