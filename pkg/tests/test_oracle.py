import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pmult.abelian import FinAb, multiplier_abelian
from pmult.catalog import build_abelian, build_elementary
from pmult.oracle import (CAP_ENV, CocycleSystem, OracleCapExceeded, PrimePowerRowSpace,
                          h2_order, howell_pivots, kernel_log_order, multiplier_exponent,
                          multiplier_order, oracle_cap)
from pmult.pcgroup import PcGroup, PcPresentation, TableGroup

from conftest import group, oracle


def _partitions(n, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for a in range(min(n, largest), 0, -1):
        for rest in _partitions(n - a, a):
            yield (a,) + rest


def _brute_kernel(A, q, ncols):
    return sum(1 for x in itertools.product(range(q), repeat=ncols)
               if not (np.asarray(A) @ np.array(x) % q).any())


# -- counting kernels mod p^a ----------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (2, 3), (3, 2)]), st.integers(1, 3),
       st.integers(1, 3), st.data())
def test_kernel_count_matches_brute_force(pa, rows, cols, data):
    p, a = pa
    q = p ** a
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=cols,
                                             max_size=cols), min_size=rows, max_size=rows)))
    assert p ** kernel_log_order(A, p, a) == _brute_kernel(A, q, cols)
    space = PrimePowerRowSpace(p, a, cols)
    for r in A:
        space.add(r[None, :])
    assert p ** space.kernel_log_order() == _brute_kernel(A, q, cols)


def test_howell_pivots_on_diagonal():
    piv = howell_pivots(np.array([[3, 0], [0, 1]]), 3, 2)
    assert sorted(v for _, v, _ in piv) == [0, 1]
    assert kernel_log_order(np.array([[3, 0], [0, 1]]), 3, 2) == 1
    assert kernel_log_order(np.zeros((0, 3), dtype=np.int64), 3, 2, ncols=3) == 6


# -- the multiplier identity and small examples ----------------------------------

def test_trivial_and_cyclic_groups():
    assert h2_order(TableGroup([[0]])) == 1
    C3 = build_elementary(3, 1)
    assert h2_order(C3) == 3
    assert multiplier_order(C3) == 1
    assert multiplier_order(build_elementary(3, 2)) == 3


@pytest.mark.parametrize("p,logn", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6),
                                    (3, 1), (3, 2), (3, 3), (3, 4)])
def test_oracle_equals_closed_form_on_abelian_groups(p, logn):
    for part in _partitions(logn):
        orders = [p ** a for a in part]
        G = build_abelian(p, orders)
        want = multiplier_abelian(FinAb.from_orders(p, orders)).log_order
        assert multiplier_exponent(G) == want, orders


def test_known_nonabelian_values():
    assert oracle("E(3)") == 2
    assert oracle("extraspecial(3,9)") == 0
    assert oracle("wreath(3)") == 1
    assert oracle("G1(3,4)") == 4
    assert multiplier_exponent(build_elementary(3, 3)) == 3


@pytest.mark.parametrize("name", ["E(3)", "extraspecial(3,9)", "abelian(9,3)",
                                  "elementary(2,2)", "elementary(3,3)"])
def test_full_system_agrees_with_generator_system(name):
    G = group(name)
    assert multiplier_exponent(G, system="full") == multiplier_exponent(G)


def test_full_system_shape():
    T = group("E(3)").to_table()
    S = CocycleSystem.full(T)
    assert S.ncols == 26 ** 2 and S.nrows == 26 ** 3
    # entries are stored mod n; read them back as small signed coefficients
    signed = (S.blocks[0] + 2) % S.modulus - 2
    assert np.abs(signed).max() <= 2
    assert (np.abs(signed).sum(axis=1) <= 4).all()


@pytest.mark.parametrize("name", ["E(3)", "wreath(3)"])
def test_oracle_independent_of_element_order(name):
    T = group(name).to_table()
    want = multiplier_exponent(T)
    rng = np.random.default_rng(11)
    for _ in range(3):
        perm = rng.permutation(T.order)
        assert multiplier_exponent(T.relabel(perm)) == want


def test_oracle_on_quotient_tables():
    G = group("wreath(3)")
    Q, _ = G.quotient(G.gamma(3))
    assert multiplier_exponent(Q) == 2        # order 27 of class 2 and exponent 3


def test_cap_is_enforced(monkeypatch):
    G = group("G1(3,4)")
    with pytest.raises(OracleCapExceeded):
        multiplier_exponent(G, cap=27)
    monkeypatch.setenv(CAP_ENV, "27")
    assert oracle_cap() == 27
    with pytest.raises(OracleCapExceeded):
        multiplier_exponent(G)
    monkeypatch.delenv(CAP_ENV)
    assert oracle_cap() == 243


def test_non_prime_power_order_rejected():
    S3 = TableGroup([[0, 1, 2, 3, 4, 5], [1, 2, 0, 4, 5, 3], [2, 0, 1, 5, 3, 4],
                     [3, 5, 4, 0, 2, 1], [4, 3, 5, 1, 0, 2], [5, 4, 3, 2, 1, 0]])
    with pytest.raises(ValueError, match="prime power"):
        multiplier_exponent(S3)
