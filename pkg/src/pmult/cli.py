"""Command line entry point ``pmult``.

Output is JSON unless ``--table`` is given.  Exit codes: 0 when every check
passes, 1 when a theorem check fails, 2 for input errors (unknown group,
schema or consistency violation, oracle cap exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .abelian import p_valuation, tensor
from .bounds import (BoundDomainError, build_report, eq0_bound, karpilowsky_check,
                     prop1_check, theorem1_bound, theorem3_bound)
from .catalog import STANDARD, CatalogEntry, SchemaError, UnknownGroup, catalog, load_group
from .oracle import OracleCapExceeded, multiplier_exponent, oracle_cap
from .pcgroup import GroupTooLarge, InconsistentPresentation, PcGroup, PresentationError, section
from .psi import (NoWitness, PsiContext, PsiError, psi_image_log_order, theorem1_witness,
                  theorem3_witness)
from .tails import tails_multiplier_exponent

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _fmt(x) -> str:
    if isinstance(x, dict) and set(x) == {"num", "den"}:
        return str(x["num"]) if x["den"] == 1 else f"{x['num']}/{x['den']}"
    if isinstance(x, (dict, list)):
        return json.dumps(x)
    return "-" if x is None else str(x)


def _emit(data: dict, table: bool) -> None:
    data = _jsonable(data)
    if not table:
        print(json.dumps(data, indent=2))
        return
    width = max((len(k) for k in data), default=0)
    for k, v in data.items():
        print(f"{k:<{width}}  {_fmt(v)}")


def _logp(n: int, p: int) -> int:
    return p_valuation(n, p) if n > 1 else 0


def resolve_multiplier(G: PcGroup, entry: Optional[CatalogEntry], method: str = "auto",
                       cap: Optional[int] = None) -> tuple[Optional[int], Optional[str]]:
    """log_p |M(G)| and where it came from.

    ``auto`` runs the cocycle oracle when |G| is within the cap, then tries
    tails, then falls back to the catalog value.
    """
    cap = oracle_cap() if cap is None else cap
    if method in ("auto", "cocycle"):
        if G.order <= cap:
            return multiplier_exponent(G, cap=cap), "oracle"
        if method == "cocycle":
            raise OracleCapExceeded(f"|G| = {G.order} exceeds the oracle cap {cap}")
    if method in ("auto", "tails"):
        try:
            return tails_multiplier_exponent(G), "tails"
        except ValueError:
            if method == "tails":
                raise
    if method in ("auto", "catalog") and entry is not None and entry.multiplier is not None:
        return entry.multiplier, entry.source
    return None, None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_info(G: PcGroup, entry, args) -> tuple[dict, int]:
    p = G.prime
    series = [H.order for H in G.lower_central_series()]
    Gab, _ = G.abelianization()
    out = {"name": G.name, "p": p, "n": G.log_order, "order": G.order, "ngens": G.ngens,
           "class": G.nilpotency_class, "k": _logp(G.gamma(2).order, p),
           "d": G.min_generators(), "lower_central_series": series,
           "center_order": G.center().order, "abelianization": list(Gab.orders),
           "maximal_class": G.is_maximal_class()}
    if G.nilpotency_class >= 2:
        out["delta"] = PsiContext(G).delta
    if entry is not None:
        got = entry.check(G)
        out["catalog_check"] = {k: v[0] == v[1] for k, v in got.items()}
        out["catalog_multiplier"] = entry.multiplier
        out["catalog_source"] = entry.source
    return out, EXIT_OK


def cmd_bounds(G: PcGroup, entry, args) -> tuple[dict, int]:
    if args.oracle:
        m, src = resolve_multiplier(G, entry, args.method, args.cap)
    elif entry is not None and entry.multiplier is not None:
        m, src = entry.multiplier, entry.source
    else:
        m, src = None, None
    rep = build_report(G, m, src)
    out = rep.to_json()
    out["violations"] = rep.violations()
    return out, EXIT_FAIL if out["violations"] else EXIT_OK


def cmd_psi(G: PcGroup, entry, args) -> tuple[dict, int]:
    ctx = PsiContext(G)
    indices = [args.index] if args.index is not None else list(range(2, ctx.c + 1))
    images = {}
    for i in indices:
        T = ctx.tensor_group(i)
        images[str(i)] = {"image_log_order": psi_image_log_order(ctx, i),
                          "tensor_log_order": T.log_order,
                          "section": list(ctx.sections[i].orders)}
    out = {"name": G.name, "p": G.prime, "c": ctx.c, "delta": ctx.delta,
           "gbar_ab": list(ctx.gbar_ab.orders), "psi": images}
    return out, EXIT_OK


def cmd_multiplier(G: PcGroup, entry, args) -> tuple[dict, int]:
    m, src = resolve_multiplier(G, entry, args.method, args.cap)
    if m is None:
        raise InputError("no method could determine the multiplier")
    out = {"name": G.name, "p": G.prime, "n": G.log_order, "exponent": m,
           "order": G.prime ** m, "source": src}
    if entry is not None and entry.multiplier is not None:
        out["catalog"] = entry.multiplier
        out["catalog_source"] = entry.source
        out["agrees_with_catalog"] = entry.multiplier == m
    return out, EXIT_OK


def _need_m(G, entry, args) -> tuple[int, str]:
    m, src = resolve_multiplier(G, entry, args.method, args.cap)
    if m is None:
        raise InputError("multiplier unknown; raise the cap or use a catalog group")
    return m, src


def verify_prop1(G, entry, args) -> dict:
    m, src = _need_m(G, entry, args)
    res = prop1_check(G, m)
    return {"check": "prop1", "multiplier": m, "source": src, "lhs": res.lhs,
            "rhs": res.rhs, "k": res.k, "psi_images": res.psi_images,
            "abelian_multiplier": res.abelian_multiplier,
            "tensor_orders": res.tensor_orders, "tight": res.tight, "pass": res.holds}


def verify_thm1(G, entry, args) -> dict:
    ctx = PsiContext(G)
    n, p = G.log_order, G.prime
    k, d = _logp(G.gamma(2).order, p), G.min_generators()
    witnesses = {}
    ok = True
    for i in range(2, min(ctx.delta, ctx.c) + 1):
        w = theorem1_witness(ctx, i)
        image = psi_image_log_order(ctx, i)
        good = w.holds and image >= ctx.delta - i
        witnesses[str(i)] = {"lower_bound": w.log_lower_bound, "required": w.required,
                             "image_log_order": image, "holds": good}
        ok &= good
    m, src = _need_m(G, entry, args)
    bound = theorem1_bound(d, n, k, ctx.c)
    return {"check": "thm1", "delta": ctx.delta, "witnesses": witnesses,
            "theorem1": bound, "multiplier": m, "source": src,
            "pass": ok and m <= bound}


def verify_thm2(G, entry, args) -> dict:
    n, p = G.log_order, G.prime
    k = _logp(G.gamma(2).order, p)
    m, src = _need_m(G, entry, args)
    e = eq0_bound(n, k)
    claimed = entry is not None and entry.source == "paper" and entry.multiplier == e
    out = {"check": "thm2", "eq0": e, "multiplier": m, "source": src,
           "attained": m == e, "attainment_claimed": claimed}
    out["pass"] = m <= e and (m == e or not claimed)
    return out


def verify_thm3(G, entry, args) -> dict:
    w = theorem3_witness(G)
    m, src = _need_m(G, entry, args)
    bound = theorem3_bound(G.log_order)
    return {"check": "thm3", "s": w.s, "s1": w.s1, "generates": w.generates,
            "chain_ok": w.chain_ok, "psi_nontrivial": w.psi_nontrivial,
            "congruence": w.congruence, "even_indices_not_claimed": w.even_indices,
            "theorem3": bound, "raw": Fraction(G.log_order, 2), "multiplier": m,
            "source": src, "witness_holds": w.holds,
            "pass": w.holds and m <= bound}


def verify_karpilowsky(G, entry, args) -> dict:
    c = G.nilpotency_class
    if c < 2:
        raise BoundDomainError("needs a non-abelian group")
    p = G.prime
    gc = G.gamma(c)
    Q, _ = G.quotient(gc)
    m_g, _ = _need_m(G, entry, args)
    m_q = multiplier_exponent(Q, cap=args.cap)
    Gab, _ = G.abelianization()
    C = section(G, gc, G.trivial())
    t = tensor(Gab, C).order
    res = karpilowsky_check(t, p ** m_g, p ** m_q, gc.order, p)
    return {"check": "karpilowsky", "tensor_order": t, "m_group": p ** m_g,
            "m_quotient": p ** m_q, "gamma_c_order": gc.order,
            "x_order": res.x_order, "ratio": res.ratio, "pass": res.ok}


VERIFIERS = {"prop1": verify_prop1, "thm1": verify_thm1, "thm2": verify_thm2,
             "thm3": verify_thm3, "karpilowsky": verify_karpilowsky}


def cmd_verify(G: PcGroup, entry, args) -> tuple[dict, int]:
    out = VERIFIERS[args.check](G, entry, args)
    out = {"name": G.name, **out}
    return out, EXIT_OK if out["pass"] else EXIT_FAIL


def cmd_catalog(args) -> tuple[dict, int]:
    if args.list:
        return {"groups": list(STANDARD)}, EXIT_OK
    rows = {}
    for e in catalog():
        rows[e.name] = {"order": e.order, "class": e.nilpotency_class, "k": e.k, "d": e.d,
                        "multiplier": e.multiplier, "source": e.source, "note": e.note}
    return rows, EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmult", description=(
        "Schur multiplier bounds, Psi images and multiplier oracles for p-groups "
        "given by power-commutator presentations."))
    parser.add_argument("--version", action="version", version=f"pmult {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true", help="human readable output")
    group_arg = argparse.ArgumentParser(add_help=False, parents=[common])
    group_arg.add_argument("group", help="catalog name such as 'E(3)' or a JSON group file")
    oracle_args = argparse.ArgumentParser(add_help=False)
    oracle_args.add_argument("--cap", type=int, default=None,
                             help="largest |G| for the cocycle oracle (default: "
                                  "$PMULT_ORACLE_CAP or 243)")
    oracle_args.add_argument("--method", choices=["auto", "cocycle", "tails", "catalog"],
                             default="auto", help="how to obtain |M(G)|")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[group_arg], help="structural invariants")
    p = sub.add_parser("bounds", parents=[group_arg, oracle_args], help="bound report")
    p.add_argument("--oracle", action="store_true",
                   help="compute the multiplier instead of using the catalog value")
    p = sub.add_parser("psi", parents=[group_arg], help="Psi image orders")
    p.add_argument("--index", type=int, default=None)
    sub.add_parser("multiplier", parents=[group_arg, oracle_args], help="log_p |M(G)|")
    p = sub.add_parser("verify", parents=[common, oracle_args], help="theorem checks")
    p.add_argument("check", choices=sorted(VERIFIERS))
    p.add_argument("group")
    p = sub.add_parser("catalog", parents=[common], help="built-in groups")
    p.add_argument("--list", action="store_true", help="names only")
    return parser


COMMANDS = {"info": cmd_info, "bounds": cmd_bounds, "psi": cmd_psi,
            "multiplier": cmd_multiplier, "verify": cmd_verify}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            out, code = cmd_catalog(args)
        else:
            G, entry = load_group(args.group)
            out, code = COMMANDS[args.command](G, entry, args)
    except (UnknownGroup, SchemaError, PresentationError, InconsistentPresentation,
            OracleCapExceeded, GroupTooLarge, BoundDomainError, PsiError, NoWitness,
            InputError, FileNotFoundError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownGroup) and exc.args else str(exc)
        print(f"pmult: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_INPUT
    _emit(out, args.table)
    return code


if __name__ == "__main__":
    sys.exit(main())
