import json
from fractions import Fraction

import pytest

from pmult.bounds import (BoundDomainError, build_report, eq0_bound, ew_rai_bound,
                          gaschutz_bound, green_bound, karpilowsky_check, karpilowsky_orders,
                          moravec_bound, prop1_check, prop1_exact_upper, theorem1_bound,
                          theorem3_bound)
from pmult.catalog import build_abelian, lookup
from pmult.oracle import multiplier_exponent
from pmult.tails import tails_multiplier_exponent

from conftest import context, group, oracle


def known_multiplier(name: str) -> int:
    """Cocycle oracle within its cap, tails oracle beyond."""
    G = group(name)
    return oracle(name) if G.order <= 243 else tails_multiplier_exponent(G)


# -- formulas ------------------------------------------------------------------------

def test_green():
    assert green_bound(3) == 3 and green_bound(1) == 0 and green_bound(7) == 21


def test_eq0():
    assert eq0_bound(3, 1) == 2
    assert eq0_bound(7, 4) == 10
    assert eq0_bound(6, 3) == 8


def test_ew_rai():
    assert ew_rai_bound(2, 3, 1) == 2
    assert ew_rai_bound(3, 7, 4) == 10
    with pytest.raises(BoundDomainError):
        ew_rai_bound(1, 3, 1)


def test_theorem1():
    assert theorem1_bound(3, 7, 4, 3) == 10
    assert theorem1_bound(3, 6, 3, 2) == 8
    for n, k, c in [(3, 1, 2), (5, 3, 4), (8, 2, 3)]:
        assert theorem1_bound(2, n, k, c) == Fraction(n + k, 2)


def test_side_condition_bounds():
    assert theorem3_bound(4) == 2
    assert theorem3_bound(5) == 2 and theorem3_bound(9) == 4
    assert moravec_bound(3, 6) == 6
    assert gaschutz_bound(4) == 3
    with pytest.raises(BoundDomainError):
        theorem3_bound(3)
    with pytest.raises(BoundDomainError):
        moravec_bound(3, 4)


def test_theorem1_never_exceeds_ew_rai_on_the_box():
    checked = 0
    for n in range(1, 13):
        for d in range(2, n + 1):
            for c in range(2, n + 1):
                for k in range(c - 1, n - d + 1):
                    assert theorem1_bound(d, n, k, c) <= ew_rai_bound(d, n, k)
                    checked += 1
    assert checked > 500


def test_theorem3_improves_on_moravec_and_gaschutz():
    for p in (3, 5, 7):
        for n in range(4, 21):
            assert theorem3_bound(n) < gaschutz_bound(n)
            if n > p + 1:
                assert theorem3_bound(n) < moravec_bound(p, n)


# -- the exact-factor inequality ---------------------------------------------------

def test_prop1_on_E3_is_tight():
    res = prop1_check(group("E(3)"), 2)
    assert (res.multiplier, res.k, sum(res.psi_images.values())) == (2, 1, 0)
    assert res.lhs == 3 and res.rhs == 3 and res.holds and res.tight


def test_prop1_on_wreath():
    assert prop1_check(group("wreath(3)"), oracle("wreath(3)")).holds


def test_prop1_rejects_abelian_groups():
    with pytest.raises(BoundDomainError):
        prop1_check(build_abelian(3, [9, 3]), 1)


def test_prop1_exact_upper_examples():
    assert prop1_exact_upper(group("E(3)")) == 2
    assert prop1_exact_upper(group("G3(3)")) == 8
    assert prop1_exact_upper(group("G4"), context("G4")) == 10


@pytest.mark.parametrize("name", ["E(3)", "extraspecial(3,9)", "G1(3,4)", "wreath(3)",
                                  "maxclass243", "G2(3,2+2)", "G2(3,3+1)", "G3(3)", "G4"])
def test_prop1_exact_upper_dominates_multiplier(name):
    m = known_multiplier(name)
    upper = prop1_exact_upper(group(name))
    assert upper >= m
    if name in ("E(3)", "G1(3,4)"):
        assert upper == m


# -- Karpilowsky order identity ------------------------------------------------------

def test_karpilowsky_on_wreath():
    orders = karpilowsky_orders(group("wreath(3)"), multiplier_exponent)
    assert orders == {"tensor": 9, "m_group": 3, "m_quotient": 9, "gamma_c": 3}
    res = karpilowsky_check(orders["tensor"], orders["m_group"], orders["m_quotient"],
                            orders["gamma_c"], 3)
    assert res.ok and res.x_order == 9


def test_karpilowsky_fabricated_orders_fail():
    assert not karpilowsky_check(9, 27 * 9, 9, 3, 3).ok       # quotient 1/9
    assert not karpilowsky_check(9, 3, 9, 2, 3).ok            # not a power of 3
    with pytest.raises(BoundDomainError):
        karpilowsky_check(9, 3, 9, 1, 3)


# -- reports -------------------------------------------------------------------------

def test_report_E3():
    rep = build_report(group("E(3)"), 2, "oracle")
    assert rep.niroomand_eq0 == 2 and rep.attained["niroomand_eq0"]
    assert rep.gaschutz == 2 and rep.theorem3 is None and rep.moravec is None


def test_report_G4():
    rep = build_report(group("G4"), ctx=context("G4"))
    assert rep.niroomand_eq0 == 10 and rep.theorem1 == 10
    assert rep.gaschutz is None and rep.d == 3 and rep.k == 4 and rep.c == 3
    assert rep.theorem1 <= rep.ew_rai


def test_report_wreath():
    rep = build_report(group("wreath(3)"), oracle("wreath(3)"), "oracle")
    assert rep.theorem3 == 2 and rep.theorem3_raw == 2
    assert rep.moravec is None                        # n = p + 1
    assert rep.violations() == []


def test_report_json_layout():
    rep = build_report(group("maxclass243"))
    data = json.loads(rep.dumps())
    for f in ("p", "n", "k", "d", "c", "delta", "green", "gaschutz", "niroomand_eq0",
              "ew_rai", "theorem1", "moravec", "theorem3", "prop1_exact_upper"):
        assert f in data
    assert data["theorem3"] == {"num": 2, "den": 1}
    assert data["theorem3_raw"] == {"num": 5, "den": 2}
    assert data["moravec"] == {"num": 4, "den": 1}
    assert data["multiplier"] is None


def test_abelian_report_omits_class_bounds():
    rep = build_report(build_abelian(3, [3, 3, 3]), 3)
    assert rep.green == 3 and rep.attained["green"]
    assert rep.niroomand_eq0 is None and rep.theorem1 is None and rep.delta is None


THEOREM3_COUNTEREXAMPLE = pytest.mark.xfail(
    strict=True,
    reason="order 3^5 maximal class group with log_3 |M| = 3 > floor(5/2); "
           "cocycle and tails oracles agree")


@pytest.mark.parametrize("name", [
    "E(3)", "extraspecial(3,9)", "G1(3,4)", "wreath(3)", "elementary(3,3)",
    "elementary(2,2)", "abelian(9,3)", "G2(3,2+2)", "G2(3,3+1)", "G3(3)", "G4",
    pytest.param("maxclass243", marks=THEOREM3_COUNTEREXAMPLE)])
def test_multiplier_within_every_applicable_bound(name):
    G = group(name)
    rep = build_report(G, known_multiplier(name), "oracle")
    assert rep.violations() == []


def test_theorem3_bound_fails_for_the_order_243_maximal_class_group():
    G = group("maxclass243")
    m = oracle("maxclass243")
    assert G.is_maximal_class() and G.prime == 3 and G.log_order == 5
    assert m == tails_multiplier_exponent(G) == 3
    rep = build_report(G, m, "oracle")
    assert rep.violations() == ["theorem3"]
    assert m > rep.theorem3_raw
    # the image bound still holds and is attained
    assert rep.prop1_exact_upper == 3


def test_G2_variants_and_eq0_attainment(capsys):
    results = {}
    for variant in ("2+2", "3+1"):
        name = f"G2(3,{variant})"
        G = group(name)
        m = oracle(name)
        assert m == tails_multiplier_exponent(G)
        rep = build_report(G, m, "oracle")
        results[variant] = (m, rep.niroomand_eq0, rep.attained["niroomand_eq0"])
    with capsys.disabled():
        for v, (m, e, hit) in results.items():
            print(f"\nG2 variant {v}: log_3|M| = {m}, eq0 = {e}, attained = {hit}")
    assert results["2+2"] == (6, 6, True)
    assert results["3+1"][2] is False
