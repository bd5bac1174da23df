"""
Unit Tests for Finite Heyting Algebras

Functions:
    test_validateAlgebra_builtins: The builtin algebras are Heyting algebras.
    test_validateAlgebra_corrupted: A broken implication entry fails residuation.
    test_algebraFromOrder_*: Malformed orders are rejected.
    test_validateDoubleNegation: ¬¬ satisfies inc, idm and prs.
    test_residuation_property, test_bigMeet_property: Hypothesis laws over DIAMOND4.
"""

import pytest
from hypothesis import given, strategies as st

from controller.checkconstants import LAW_PRS, LAW_RESIDUATION
from controller.errors import MalformedAlgebraError, UnknownElementError, UnknownNameError
from controller.heyting import (
    BUILTIN_ORDERS,
    algebraFromOrder,
    builtinAlgebra,
    orderClosure,
    validateAlgebra,
    validateDoubleNegation,
)
from objects.result import Verdict


@pytest.mark.parametrize("name", sorted(BUILTIN_ORDERS))
def test_validateAlgebra_builtins(name):
    """
    GIVEN a builtin algebra
    WHEN it is validated
    THEN every law holds
    """
    result = validateAlgebra(builtinAlgebra(name))
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_RESIDUATION


def test_builtinAlgebra_operations():
    chain = builtinAlgebra("CHAIN3")
    assert chain.top == "1"
    assert chain.bottom == "0"
    assert chain.imp("h", "0") == "0"
    assert chain.imp("1", "h") == "h"
    assert chain.neg("h") == "0"
    assert chain.doubleNegation("h") == "1"
    assert chain.bigMeet([]) == "1"
    assert chain.bigJoin([]) == "0"

    diamond = builtinAlgebra("DIAMOND4")
    assert diamond.meet("a", "b") == "0"
    assert diamond.join("a", "b") == "1"
    assert diamond.neg("a") == "b"
    assert diamond.imp("a", "b") == "b"


def test_builtinAlgebra_unknown():
    with pytest.raises(UnknownNameError):
        builtinAlgebra("FIVE")


def test_validateAlgebra_corrupted():
    """
    GIVEN CHAIN3 with h ⊃ 0 overwritten to h
    WHEN it is validated
    THEN residuation fails at a = h, b = h, c = 0
    """
    broken = builtinAlgebra("CHAIN3").replaced("imp", "h", "0", "h")
    result = validateAlgebra(broken)
    assert result.verdict == Verdict.COUNTEREXAMPLE
    assert result.law == LAW_RESIDUATION
    assert (result.witness["a"], result.witness["b"], result.witness["c"]) == ("h", "h", "0")


def test_algebraFromOrder():
    algebra = algebraFromOrder("V", ["0", "x", "1"], [("0", "x"), ("x", "1")])
    assert validateAlgebra(algebra).verdict == Verdict.VERIFIED
    assert algebra.imp("x", "0") == "0"


def test_algebraFromOrder_notHeyting():
    """
    GIVEN the five element lattice M3, which is not distributive
    WHEN an algebra is built from its order
    THEN it is rejected
    """
    elements = ["0", "a", "b", "c", "1"]
    order = [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
    with pytest.raises(MalformedAlgebraError):
        algebraFromOrder("M3", elements, order)


def test_algebraFromOrder_noTop():
    with pytest.raises(MalformedAlgebraError):
        algebraFromOrder("V", ["0", "a", "b"], [("0", "a"), ("0", "b")])


def test_orderClosure_cycle():
    with pytest.raises(MalformedAlgebraError):
        orderClosure(["a", "b"], [("a", "b"), ("b", "a")])


def test_orderClosure_unknownElement():
    with pytest.raises(UnknownElementError):
        orderClosure(["a"], [("a", "z")])


def test_check_unknownElement():
    with pytest.raises(UnknownElementError):
        builtinAlgebra("BOOL2").check("h")


@pytest.mark.parametrize("name", sorted(BUILTIN_ORDERS))
def test_validateDoubleNegation(name):
    result = validateDoubleNegation(builtinAlgebra(name))
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_PRS


DIAMOND = builtinAlgebra("DIAMOND4")
elements = st.sampled_from(DIAMOND.elements)


@given(elements, elements, elements)
def test_residuation_property(a, b, c):
    assert DIAMOND.le(DIAMOND.meet(c, a), b) == DIAMOND.le(c, DIAMOND.imp(a, b))


@given(st.lists(elements, max_size=5), elements)
def test_bigMeet_property(subset, c):
    """
    GIVEN a subset of DIAMOND4 and an element c
    WHEN the big meet and join are taken
    THEN c is below the meet iff it is below every member, and dually for the join
    """
    assert DIAMOND.le(c, DIAMOND.bigMeet(subset)) == all(DIAMOND.le(c, x) for x in subset)
    assert DIAMOND.le(DIAMOND.bigJoin(subset), c) == all(DIAMOND.le(x, c) for x in subset)
