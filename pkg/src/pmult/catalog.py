"""Presentations of the named test groups, plus scaffolding families.

Generator indices in builders are 0-based; the JSON group-file format uses
1-based indices ``g_1 .. g_m``::

    {"prime": 3, "orders": [3, 3, 3],
     "powers": {"1": [[3, 1]]},
     "commutators": {"2,1": [[3, 2]]}}

Omitted entries are trivial words.  ``"j,i"`` keys need ``j > i``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Union

from .abelian import FinAb, is_power_of, multiplier_abelian, p_valuation
from .pcgroup import PcGroup, PcPresentation, PresentationError


class SchemaError(ValueError):
    """Group file does not match the JSON schema."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


class UnknownGroup(KeyError):
    pass


def _odd_prime(p: int) -> None:
    if p == 2 or p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not an odd prime")


def _from(p, orders, powers=None, comms=None, name="") -> PcGroup:
    pres = PcPresentation.from_relations(p, tuple(orders), powers or {}, comms or {})
    return PcGroup(pres, name=name)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_abelian(p: int, orders) -> PcGroup:
    """Direct product of cyclic groups of the given p-power orders.

    C_{p^a} uses a chain of generators h, h^p, ..., h^{p^(a-1)}.
    """
    rel, powers = [], {}
    for o in orders:
        if not is_power_of(o, p) or o == 1:
            raise ValueError(f"cyclic order {o} is not a nontrivial power of {p}")
        a = p_valuation(o, p)
        start = len(rel)
        rel += [p] * a
        for t in range(a - 1):
            powers[start + t] = [(start + t + 1, 1)]
    name = "abelian(" + ",".join(str(o) for o in orders) + ")"
    return _from(p, rel, powers, name=name)


def build_elementary(p: int, n: int) -> PcGroup:
    G = build_abelian(p, [p] * n)
    G.name = f"elementary({p},{n})"
    return G


def build_extraspecial(p: int, exponent: int) -> PcGroup:
    """Extraspecial group of order p^3 and exponent p or p^2 (p odd).

    Generators a, b, c with [a, b] = c central; exponent p^2 adds a^p = c.
    """
    _odd_prime(p)
    if exponent not in (p, p * p):
        raise ValueError("exponent must be p or p^2")
    powers = {0: [(2, 1)]} if exponent == p * p else {}
    # [b, a] = [a, b]^-1 = c^-1
    return _from(p, (p, p, p), powers, {(1, 0): [(2, p - 1)]},
                 name=f"extraspecial({p},{exponent})")


def build_G1(p: int, n: int) -> PcGroup:
    """E_p x C_p^(n-3)."""
    _odd_prime(p)
    if n < 3:
        raise ValueError("G1 needs n >= 3")
    return _from(p, (p,) * n, {}, {(1, 0): [(2, p - 1)]}, name=f"G1({p},{n})")


def build_G2(p: int, variant: str = "2+2") -> PcGroup:
    """C_p^4 semidirect C_p, generators b, a1, a2, a3, a4.

    ``"2+2"``: [a1, b] = a2, [a3, b] = a4.  ``"3+1"``: [a1, b] = a2, [a2, b] = a3.
    """
    _odd_prime(p)
    if variant == "2+2":
        comms = {(1, 0): [(2, 1)], (3, 0): [(4, 1)]}
    elif variant == "3+1":
        comms = {(1, 0): [(2, 1)], (2, 0): [(3, 1)]}
    else:
        raise ValueError("G2 variant must be '2+2' or '3+1'")
    return _from(p, (p,) * 5, {}, comms, name=f"G2({p},{variant})")


def _g3_comms(p: int) -> dict:
    # generators a1 a2 a3 b1 b2 b3 at 0..5
    # [a1,a2] = b3, [a2,a3] = b1, [a3,a1] = b2
    return {(1, 0): [(5, p - 1)],   # [a2, a1] = b3^-1
            (2, 1): [(3, p - 1)],   # [a3, a2] = b1^-1
            (2, 0): [(4, 1)]}       # [a3, a1] = b2


def build_G3(p: int) -> PcGroup:
    _odd_prime(p)
    return _from(p, (p,) * 6, {}, _g3_comms(p), name=f"G3({p})")


def build_G4() -> PcGroup:
    """The group of order 3^7 attaining the Niroomand bound in class 3.

    Relations as read here: [b_i, a_i] = c for i = 1, 2, 3, [a_i, b_j] = 1 for
    i != j, c central, everything of order 3.
    """
    comms = _g3_comms(3)
    for i in range(3):
        comms[(3 + i, i)] = [(6, 1)]
    return _from(3, (3,) * 7, {}, comms, name="G4")


def build_wreath_CpCp(p: int) -> PcGroup:
    """C_p wr C_p: generators s, a_1, ..., a_p with [a_k, s] = a_{k+1}."""
    if p < 2:
        raise ValueError("p must be prime")
    comms = {(k, 0): [(k + 1, 1)] for k in range(1, p)}
    return _from(p, (p,) * (p + 1), {}, comms, name=f"wreath({p})")


def build_maximal_class_243() -> PcGroup:
    """A 3-group of maximal class and order 3^5.

    Z[w]/(9) with w a primitive cube root of unity, extended by s acting as
    multiplication by w.  Generators s, e1..e4 with e_{k+1} = [e_k, s],
    e1^3 = e3^2 e4, e2^3 = e4^2.
    """
    comms = {(1, 0): [(2, 1)], (2, 0): [(3, 1)], (3, 0): [(4, 1)]}
    powers = {1: [(3, 2), (4, 1)], 2: [(4, 2)]}
    return _from(3, (3,) * 5, powers, comms, name="maxclass243")


# ---------------------------------------------------------------------------
# Catalog entries
# ---------------------------------------------------------------------------

@dataclass
class CatalogEntry:
    """A named group with the invariants it is expected to have.

    ``multiplier`` is the expected log_p |M(G)| and ``source`` says where it
    comes from: ``"paper"`` (a published claim, usually via bound attainment),
    ``"closed-form"`` (abelian formula), ``"oracle"`` (frozen cocycle-oracle
    value) or ``None``.
    """
    name: str
    builder: Callable[[], PcGroup] = field(repr=False)
    order: int
    nilpotency_class: int
    k: int
    d: int
    multiplier: Optional[int] = None
    source: Optional[str] = None
    note: str = ""

    def build(self) -> PcGroup:
        G = self.builder()
        G.name = self.name
        return G

    def check(self, G: Optional[PcGroup] = None) -> dict:
        """Computed vs expected invariants."""
        G = G or self.build()
        got = {"order": G.order, "class": G.nilpotency_class,
               "k": _logp(G.gamma(2).order, G.prime), "d": G.min_generators()}
        want = {"order": self.order, "class": self.nilpotency_class, "k": self.k, "d": self.d}
        return {key: (got[key], want[key]) for key in got}


def _logp(n, p):
    return p_valuation(n, p) if n > 1 else 0


def eq0_exponent(n: int, k: int) -> int:
    return int(Fraction((n - k - 1) * (n + k - 2), 2) + 1)


def _entry(name: str) -> CatalogEntry:
    m = re.fullmatch(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*", name)
    if not m:
        raise UnknownGroup(name)
    fam, args = m.group(1), m.group(2)
    args = [a.strip() for a in args.split(",")] if args else []

    def ints(count):
        if len(args) != count:
            raise UnknownGroup(f"{fam} takes {count} argument(s)")
        try:
            return [int(a) for a in args]
        except ValueError:
            raise UnknownGroup(f"{fam}: integer arguments expected") from None

    if fam == "G4" and not args:
        return CatalogEntry("G4", build_G4, 3 ** 7, 3, 4, 3, 10, "paper",
                            "bound (1) attained for (n, k) = (7, 4); beyond the cocycle oracle, "
                            "reproduced by the tails oracle")
    if fam == "maxclass243" and not args:
        return CatalogEntry("maxclass243", build_maximal_class_243, 243, 4, 3, 2, 3, "oracle",
                            "exceeds floor(n/2) = 2; cocycle and tails oracles agree")
    if fam == "E":
        (p,) = ints(1)
        e = build_extraspecial  # validate early
        return CatalogEntry(f"E({p})", lambda: e(p, p), p ** 3, 2, 1, 2, 2, "paper",
                            "attains the class-2 bound with n = 3")
    if fam == "extraspecial":
        p, ex = ints(2)
        src = (2, "paper") if ex == p else (0 if p == 3 else None, "oracle" if p == 3 else None)
        return CatalogEntry(f"extraspecial({p},{ex})", lambda: build_extraspecial(p, ex),
                            p ** 3, 2, 1, 2, src[0], src[1])
    if fam == "G1":
        p, n = ints(2)
        d = n - 1
        return CatalogEntry(f"G1({p},{n})", lambda: build_G1(p, n), p ** n, 2, 1, d,
                            eq0_exponent(n, 1), "paper", "attains the class-2 bound")
    if fam == "G2":
        if len(args) not in (1, 2):
            raise UnknownGroup("G2 takes (p) or (p,variant)")
        p = int(args[0])
        variant = args[1] if len(args) == 2 else "2+2"
        cls_ = 2 if variant == "2+2" else 3
        return CatalogEntry(f"G2({p},{variant})", lambda: build_G2(p, variant), p ** 5,
                            cls_, 2, 3, note="action is a choice; bound-only")
    if fam == "G3":
        (p,) = ints(1)
        return CatalogEntry(f"G3({p})", lambda: build_G3(p), p ** 6, 2, 3, 3,
                            eq0_exponent(6, 3), "paper", "attains the class-2 bound with k = 3")
    if fam == "wreath":
        (p,) = ints(1)
        return CatalogEntry(f"wreath({p})", lambda: build_wreath_CpCp(p), p ** (p + 1), p,
                            p - 1, 2, 1 if p == 3 else None, "oracle" if p == 3 else None)
    if fam == "elementary":
        p, n = ints(2)
        return CatalogEntry(f"elementary({p},{n})", lambda: build_elementary(p, n), p ** n,
                            1 if n else 0, 0, n, n * (n - 1) // 2, "paper",
                            "Green bound, equality iff elementary abelian")
    if fam == "abelian":
        orders = ints(len(args))
        if not orders:
            raise UnknownGroup("abelian needs at least one cyclic order")
        p = _prime_factor(orders[0])
        A = FinAb.from_orders(p, orders)
        return CatalogEntry(f"abelian({','.join(map(str, orders))})",
                            lambda: build_abelian(p, orders), A.order, 1, 0, A.rank,
                            multiplier_abelian(A).log_order, "closed-form")
    raise UnknownGroup(name)


def _prime_factor(n: int) -> int:
    for q in range(2, n + 1):
        if n % q == 0:
            return q
    raise UnknownGroup(f"no prime divides {n}")


STANDARD = ["E(3)", "extraspecial(3,9)", "G1(3,4)", "G1(5,3)", "G2(3,2+2)", "G2(3,3+1)",
            "G3(3)", "G3(5)", "G4", "wreath(3)", "maxclass243", "elementary(3,3)",
            "elementary(2,2)", "abelian(9,3)"]


def lookup(name: str) -> CatalogEntry:
    return _entry(name)


def catalog() -> list[CatalogEntry]:
    return [_entry(n) for n in STANDARD]


# ---------------------------------------------------------------------------
# Group files
# ---------------------------------------------------------------------------

def presentation_to_json(pres: PcPresentation) -> dict:
    def sparse(word):
        return [[t + 1, e] for t, e in enumerate(word) if e]

    return {"prime": pres.prime,
            "orders": list(pres.rel_orders),
            "powers": {str(i + 1): sparse(w) for i, w in sorted(pres.powers.items())},
            "commutators": {f"{j + 1},{i + 1}": sparse(w)
                            for (j, i), w in sorted(pres.comms.items())}}


def presentation_from_json(data) -> PcPresentation:
    if not isinstance(data, dict):
        raise SchemaError("$", "expected a JSON object")
    unknown = set(data) - {"prime", "orders", "powers", "commutators"}
    if unknown:
        raise SchemaError("$", f"unknown fields {sorted(unknown)}")
    p = data.get("prime")
    if not isinstance(p, int) or isinstance(p, bool):
        raise SchemaError("prime", "expected an integer")
    orders = data.get("orders")
    if not isinstance(orders, list) or not all(isinstance(o, int) for o in orders):
        raise SchemaError("orders", "expected a list of integers")
    m = len(orders)

    def word(value, where):
        if not isinstance(value, list):
            raise SchemaError(where, "expected a list of [generator, exponent] pairs")
        v = [0] * m
        for pos, pair in enumerate(value):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, int) for x in pair)):
                raise SchemaError(f"{where}[{pos}]", "expected [generator, exponent]")
            g, e = pair
            if not 1 <= g <= m:
                raise SchemaError(f"{where}[{pos}]", f"generator {g} out of range 1..{m}")
            v[g - 1] += e
        return tuple(x % orders[t] if orders[t] > 0 else x for t, x in enumerate(v))

    powers = {}
    for key, value in (data.get("powers") or {}).items():
        where = f"powers.{key}"
        if not re.fullmatch(r"\d+", key) or not 1 <= int(key) <= m:
            raise SchemaError(where, "key must be a generator index 1..m")
        powers[int(key) - 1] = word(value, where)
    comms = {}
    for key, value in (data.get("commutators") or {}).items():
        where = f"commutators.{key}"
        mm = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", key)
        if not mm:
            raise SchemaError(where, "key must be 'j,i'")
        j, i = int(mm.group(1)), int(mm.group(2))
        if not (1 <= i < j <= m):
            raise SchemaError(where, f"key needs m >= j > i >= 1 (got j={j}, i={i})")
        comms[(j - 1, i - 1)] = word(value, where)
    return PcPresentation(p, tuple(orders), powers, comms)


def parse_group_file(path: Union[str, Path]) -> PcPresentation:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return presentation_from_json(data)


def write_group_file(pres: PcPresentation, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(presentation_to_json(pres), indent=2) + "\n")


def load_group(spec: str) -> tuple[PcGroup, Optional[CatalogEntry]]:
    """A catalog name or a path to a group file."""
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        pres = parse_group_file(path)
        return PcGroup(pres, name=path.stem), None
    entry = lookup(spec)
    return entry.build(), entry
