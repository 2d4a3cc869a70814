import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pmult.catalog import build_abelian, build_extraspecial, lookup
from pmult.pcgroup import (GroupTooLarge, InconsistentPresentation, NotNormal, PcGroup,
                           PcPresentation, PresentationError, TableGroup, check_consistency)
from pmult.psi import theorem3_witness

from conftest import SMALL_NONABELIAN, group

CATALOG_ENUMERABLE = SMALL_NONABELIAN + ["maxclass243", "G2(3,2+2)", "G2(3,3+1)",
                                         "G1(5,3)", "elementary(3,3)", "abelian(9,3)"]


# -- collection and commutators ------------------------------------------------

def test_collect_in_E3(E3):
    assert E3.collect([1, -1]) == E3.identity
    assert E3.collect([2, 1]) == (1, 1, 2)         # b a = a b c^-1
    assert E3.collect([1, 1, 1]) == E3.identity
    assert E3.collect([1, 2]) == (1, 1, 0)


def test_collect_rejects_bad_letters(E3):
    with pytest.raises(ValueError):
        E3.collect([4])
    with pytest.raises(ValueError):
        E3.collect([0])


def test_commutator_convention(E3):
    a, b, c = E3.gens
    assert E3.commutator(a, b) == c
    assert E3.commutator(b, a) == E3.inverse(c)
    assert all(E3.commutator(x, x) == E3.identity for x in E3.elements())
    assert E3.conjugate(a, b) == E3.mul(E3.mul(E3.inverse(b), a), b)


def test_abelian_group_commutators_vanish():
    A = build_abelian(3, [9, 3])
    xs = A.elements()
    assert all(A.commutator(x, y) == A.identity for x in xs for y in xs)


def test_left_and_right_normed(E3, wreath3):
    a, b, _ = E3.gens
    assert E3.left_normed([a, b]) == E3.right_normed([a, b]) == E3.commutator(a, b)
    assert E3.left_normed([a, b, a]) == E3.identity
    w = theorem3_witness(wreath3)
    x = wreath3.left_normed([w.s1, w.s, w.s])
    assert x != wreath3.identity and x in wreath3.gamma(3)
    with pytest.raises(ValueError):
        E3.left_normed([a])


def test_right_normed_bracketing(wreath3):
    rng = random.Random(1)
    G = wreath3
    els = G.elements()
    for _ in range(20):
        x, y, z = (rng.choice(els) for _ in range(3))
        assert G.right_normed([x, y, z]) == G.commutator(x, G.commutator(y, z))
        assert G.left_normed([x, y, z]) == G.commutator(G.commutator(x, y), z)


@pytest.mark.parametrize("name", CATALOG_ENUMERABLE)
def test_collection_is_idempotent_on_normal_forms(name):
    G = group(name)
    for x in G.elements():
        word = [t + 1 for t, e in enumerate(x) for _ in range(e)]
        assert G.collect(word) == x


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["E(3)", "wreath(3)", "G4", "maxclass243"]), st.data())
def test_group_axioms_on_random_elements(name, data):
    G = group(name)
    elem = st.tuples(*(st.integers(0, o - 1) for o in G.orders))
    x, y, z = data.draw(elem), data.draw(elem), data.draw(elem)
    assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
    assert G.mul(x, G.inverse(x)) == G.identity == G.mul(G.inverse(x), x)
    assert G.power(x, G.element_order(x)) == G.identity
    assert G.power(x, -2) == G.inverse(G.mul(x, x))


@pytest.mark.parametrize("name", CATALOG_ENUMERABLE)
def test_hall_witt_identity(name):
    G = group(name)
    rng = random.Random(7)
    els = G.elements()
    inv, conj, comm = G.inverse, G.conjugate, G.commutator
    for _ in range(25):
        x, y, z = (rng.choice(els) for _ in range(3))
        t1 = conj(comm(comm(x, inv(y)), z), y)
        t2 = conj(comm(comm(y, inv(z)), x), z)
        t3 = conj(comm(comm(z, inv(x)), y), x)
        assert G.mul(G.mul(t1, t2), t3) == G.identity


# -- enumeration order and series ----------------------------------------------

@pytest.mark.parametrize("name", CATALOG_ENUMERABLE)
def test_generators_generate_full_product_order(name):
    G = group(name)
    assert G.subgroup(G.gens).order == G.order == np.prod(G.orders)


def test_lower_central_series_examples(E3, wreath3, G4):
    assert [H.order for H in E3.lower_central_series()] == [27, 3, 1]
    assert E3.nilpotency_class == 2
    assert [H.order for H in wreath3.lower_central_series()] == [81, 9, 3, 1]
    assert wreath3.is_maximal_class()
    assert G4.gamma(2).order == 3 ** 4 and G4.gamma(3).order == 3
    assert G4.nilpotency_class == 3


@pytest.mark.parametrize("name", CATALOG_ENUMERABLE)
def test_gamma2_is_closure_of_generator_commutators(name):
    G = group(name)
    gs = G.gens
    comms = [G.commutator(a, b) for a in gs for b in gs]
    assert G.normal_closure(comms) == G.gamma(2)


@pytest.mark.parametrize("name", ["E(3)", "wreath(3)", "G1(3,4)", "extraspecial(3,9)",
                                  "maxclass243"])
def test_center_matches_conjugation_kernel(name):
    G = group(name)
    els = G.elements()
    kernel = [z for z in els if all(G.conjugate(x, z) == x for x in els)]
    assert G.center() == G.subgroup(kernel) and G.center().order == len(kernel)


def test_center_examples(E3):
    Z = E3.center()
    assert Z.order == 3 and (0, 0, 1) in Z
    A = build_abelian(3, [9, 3])
    assert A.center().order == A.order


def test_centralizer_of_section_in_wreath(wreath3):
    G = wreath3
    C = G.centralizer_of_section(G.gamma(2), G.trivial())
    assert C.order < G.order and G.gamma(2) <= C
    with pytest.raises(NotNormal):
        G.centralizer_of_section(G.whole(), G.subgroup([G.gens[0]]))


def test_min_generators_and_abelianization(E3, G4):
    assert E3.min_generators() == 2
    assert G4.min_generators() == 3
    A, proj = group("G3(3)").abelianization()
    assert A.orders == (3, 3, 3) and A.is_elementary()
    Eab, Eproj = E3.abelianization()
    assert Eab.orders == (3, 3)
    assert all(Eproj[x] == (0, 0) for x in E3.gamma(2).elements)


def test_quotient_tables(wreath3):
    G = wreath3
    Q, label = G.quotient(G.gamma(3))
    assert Q.order == 27 and Q.is_latin() and Q.check_associativity()
    assert label[G.identity] == Q.identity
    with pytest.raises(NotNormal):
        G.quotient(G.subgroup([G.gens[0]]))


def test_table_group_relabel_preserves_structure(E3):
    T = E3.to_table()
    perm = np.random.default_rng(0).permutation(T.order)
    T2 = T.relabel(perm)
    assert T2.is_latin() and T2.check_associativity()
    assert len(T2.derived_subgroup()) == 3
    assert len(T2.minimal_generators()) == 2


def test_table_group_rejects_non_latin():
    with pytest.raises(ValueError):
        TableGroup([[0, 1], [1, 1]])


def test_enumeration_cap():
    G = PcGroup(PcPresentation(3, (3,) * 11))
    with pytest.raises(GroupTooLarge):
        G.elements()


# -- consistency ----------------------------------------------------------------

def test_extraspecial_presentations_are_consistent():
    for p in (3, 5, 7):
        assert check_consistency(build_extraspecial(p, p).pres) is None
        assert check_consistency(build_extraspecial(p, p * p).pres) is None


def test_weight_violation_rejected_at_construction():
    # [b, a] = c with c^3 = a: c's power relation points back to an earlier generator
    with pytest.raises(PresentationError, match="g3"):
        PcPresentation.from_relations(3, (3, 3, 3), powers={2: [(0, 1)]},
                                      comms={(1, 0): [(2, 1)]})


def test_commutator_key_order_enforced():
    with pytest.raises(PresentationError):
        PcPresentation(3, (3, 3), comms={(0, 1): (0, 0)})


def test_inconsistent_presentation_located():
    # a^3 = b forces a and b to commute, contradicting [b, a] = c
    pres = PcPresentation.from_relations(3, (3, 3, 3), powers={0: [(1, 1)]},
                                         comms={(1, 0): [(2, 1)]})
    violation = check_consistency(pres)
    assert violation is not None
    message, where = violation
    assert where == (1, 1, 1) and "g1" in message
    with pytest.raises(InconsistentPresentation) as info:
        PcGroup(pres)
    assert info.value.witness == (1, 1, 1)


def test_inconsistent_triple_overlap_located():
    # a, b, c of weight one with [b, a] = d, [d, c] = e and everything else
    # trivial breaks the Jacobi relation, caught by the overlap c b a
    pres = PcPresentation.from_relations(
        3, (3,) * 5, comms={(1, 0): [(3, 1)], (3, 2): [(4, 1)]})
    violation = check_consistency(pres)
    assert violation is not None
    assert violation[1] == (3, 2, 1)


def test_G4_is_consistent_of_order_3_7(G4):
    assert check_consistency(lookup("G4").build().pres) is None
    assert G4.order == 3 ** 7
