"""Shared, cached groups for the test suite."""

from __future__ import annotations

import functools

import pytest

from pmult.catalog import lookup
from pmult.oracle import multiplier_exponent
from pmult.psi import PsiContext

# catalog groups small enough for enumeration-heavy property tests
SMALL_NONABELIAN = ["E(3)", "extraspecial(3,9)", "G1(3,4)", "wreath(3)", "G3(3)", "G4"]
# groups the cocycle oracle handles at CI scale (order <= 81)
ORACLE_CI = ["E(3)", "extraspecial(3,9)", "G1(3,4)", "wreath(3)", "elementary(3,3)",
             "elementary(2,2)", "abelian(9,3)"]


@functools.lru_cache(maxsize=None)
def group(name: str):
    return lookup(name).build()


@functools.lru_cache(maxsize=None)
def context(name: str) -> PsiContext:
    return PsiContext(group(name))


@functools.lru_cache(maxsize=None)
def oracle(name: str) -> int:
    return multiplier_exponent(group(name))


@pytest.fixture
def E3():
    return group("E(3)")


@pytest.fixture
def wreath3():
    return group("wreath(3)")


@pytest.fixture
def G4():
    return group("G4")
