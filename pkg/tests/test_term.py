"""
Unit Tests for Combinator Terms

This module tests parsing, printing, reduction, bracket abstraction and the
enumeration of the code universe.

Functions:
    test_reduceTerm: K x y reduces to x in one step.
    test_reduceTerm_weakHead: Reduction stops at the head and leaves arguments alone.
    test_normalize: Full normal forms reduce inside the arguments.
    test_reduceTerm_projections: FST and SND project pairs and stick on non-pairs.
    test_reduceTerm_outOfFuel: A divergent term exhausts the budget.
    test_reduceTerm_open: Open terms are rejected.
    test_enumerateTerms: Counts and order of the enumeration.
    test_codeUniverse: Codes are the distinct normal forms of the enumeration.
    test_parseTerm_errors: Syntax errors carry the offending offset.
    test_abstract: Abstraction followed by application behaves as substitution.
    test_printTerm_roundTrip: Printing and parsing are inverse.
"""

import pytest
from hypothesis import given, settings, strategies as st

from controller.errors import OpenTermError, TermSyntaxError, UnknownNameError
from controller.term import (
    FST,
    IDENTITY,
    K,
    P,
    S,
    SND,
    App,
    Var,
    abstract,
    app,
    codeUniverse,
    enumerateTerms,
    describeUniverse,
    isNormal,
    isStuckProjection,
    isValue,
    leafCount,
    normalize,
    parseTerm,
    printTerm,
    reduce,
    substitute,
)

OMEGA = "S (S K K) (S K K) (S (S K K) (S K K))"

closedTerms = st.recursive(st.sampled_from([S, K]), lambda inner: st.builds(App, inner, inner), max_leaves=6)
openTerms = st.recursive(
    st.sampled_from([S, K, Var("x")]), lambda inner: st.builds(App, inner, inner), max_leaves=6
)


def test_reduceTerm():
    """
    GIVEN the term K S K
    WHEN it is reduced
    THEN the value is S after one step
    """
    outcome = reduce(parseTerm("K S K"), 10)
    assert outcome.isValue
    assert outcome.value == S
    assert outcome.steps == 1


def test_reduceTerm_identity():
    outcome = reduce(App(IDENTITY, K), 10)
    assert outcome.value == K
    assert outcome.steps == 2


def test_reduceTerm_projections():
    """
    GIVEN a pair P S K
    WHEN FST and SND are applied to it, and FST to a non-pair
    THEN the components come back and the non-pair is a stuck projection
    """
    pair = app(P, S, K)
    assert reduce(App(FST, pair), 10).value == S
    assert reduce(App(SND, pair), 10).value == K
    stuck = reduce(App(FST, K), 10).value
    assert stuck == App(FST, K)
    assert isStuckProjection(stuck)
    assert not isStuckProjection(pair)


def test_reduceTerm_outOfFuel():
    """
    GIVEN the self application of S K K (S K K)
    WHEN it is reduced with a budget of 100
    THEN there is no value and the whole budget is used
    """
    outcome = reduce(parseTerm(OMEGA), 100)
    assert outcome.value is None
    assert outcome.steps == 100
    assert not outcome.isValue


def test_reduceTerm_weakHead():
    """
    GIVEN K applied to a divergent term, and S (S K K) (S K K) K
    WHEN they are reduced
    THEN the first is already a value after 0 steps and the second stops at
    K (S K K K), leaving the redex inside the argument
    """
    diverging = App(K, parseTerm(OMEGA))
    outcome = reduce(diverging, 1000)
    assert outcome.value == diverging
    assert outcome.steps == 0
    assert isValue(diverging)
    assert not isNormal(diverging)

    selfApplication = abstract("x", App(Var("x"), Var("x")))
    outcome = reduce(App(selfApplication, K), 100)
    assert outcome.value == App(K, App(IDENTITY, K))
    assert outcome.steps == 3
    assert reduce(outcome.value, 100).value == outcome.value


def test_reduceTerm_projectionOfRedex():
    """
    GIVEN FST applied to a term that only becomes a pair after reduction
    WHEN it is reduced
    THEN the argument is brought to head form and projected
    """
    assert reduce(App(FST, app(K, app(P, S, K), S)), 10).value == S
    assert reduce(App(SND, app(K, K, S)), 10).value == App(SND, K)


def test_normalize():
    """
    GIVEN S (S K K) (S K K) K
    WHEN it is normalized
    THEN the argument redex is reduced too, giving K K after 5 steps
    """
    selfApplication = abstract("x", App(Var("x"), Var("x")))
    outcome = normalize(App(selfApplication, K), 100)
    assert outcome.value == App(K, K)
    assert outcome.steps == 5
    assert isNormal(outcome.value)
    assert not normalize(App(K, parseTerm(OMEGA)), 1000).isValue
    with pytest.raises(OpenTermError):
        normalize(Var("x"), 10)


def test_reduceTerm_zeroBudget():
    assert reduce(S, 0).value == S
    assert reduce(parseTerm("K S K"), 0).value is None


def test_reduceTerm_open():
    with pytest.raises(OpenTermError):
        reduce(App(K, Var("x")), 10)


def test_enumerateTerms():
    """
    GIVEN the basis S, K
    WHEN terms of at most three leaves are enumerated
    THEN there are 2 + 4 + 16 terms, smallest first with S before K
    """
    terms = enumerateTerms(["K", "S"], 3)
    assert len(terms) == 22
    assert terms[:2] == [S, K]
    assert terms[2] == App(S, S)
    assert len(set(terms)) == len(terms)
    assert [leafCount(term) for term in terms] == sorted(leafCount(term) for term in terms)


def test_enumerateTerms_invalid():
    with pytest.raises(ValueError):
        enumerateTerms(["S"], 0)
    with pytest.raises(UnknownNameError):
        enumerateTerms(["S", "Q"], 2)


def test_codeUniverse():
    """
    GIVEN the basis S, K
    WHEN the code universe is built
    THEN every enumerated term is normalized and the distinct normal forms are
    kept: 6 codes up to two leaves, 18 of 22 terms up to three and 58 of 102 up
    to four
    """
    assert len(codeUniverse(["S", "K"], 2)) == 6
    universe = codeUniverse(["S", "K"], 3)
    assert len(universe) == 18
    assert parseTerm("K S K") not in universe
    assert parseTerm("S K K") in universe
    assert all(isNormal(term) for term in universe)
    assert len(set(universe)) == len(universe)
    assert describeUniverse(["S", "K"], 4).describe() == {"enumerated": 102, "codes": 58, "stuck": 0, "unsettled": 0}


def test_codeUniverse_stuckProjections():
    """
    GIVEN the basis S, K, P, FST, SND
    WHEN the code universe up to three leaves is built
    THEN stuck projections such as FST S are counted but are not codes, while
    pairs are
    """
    summary = describeUniverse(["S", "K", "P", "FST", "SND"], 3)
    assert summary.enumerated == 5 + 25 + 250
    assert summary.stuck > 0
    assert App(FST, S) not in summary.codes
    assert app(P, S, K) in summary.codes
    assert not any(isStuckProjection(code) for code in summary.codes)


@pytest.mark.parametrize(
    "text,position",
    [
        ("S ( K", 5),
        ("S K )", 4),
        ("S x", 2),
        ("S Q", 2),
        ("S + K", 2),
        ("()", 1),
    ],
)
def test_parseTerm_errors(text, position):
    with pytest.raises(TermSyntaxError) as error:
        parseTerm(text)
    assert error.value.position == position


def test_parseTerm_variables():
    term = parseTerm("S x (K y)", allowVariables=True)
    assert term == app(S, Var("x"), App(K, Var("y")))


def test_abstract_shapes():
    assert abstract("x", Var("x")) == app(S, K, K)
    assert abstract("x", S) == App(K, S)
    assert abstract("x", App(K, Var("x"))) == app(S, App(K, K), app(S, K, K))


@settings(max_examples=60, deadline=None)
@given(body=openTerms, argument=closedTerms)
def test_abstract(body, argument):
    """
    GIVEN a term mentioning x and a closed argument
    WHEN the abstraction over x is applied to the argument
    THEN its normal form, when both sides have one, is that of the substitution
    """
    applied = normalize(App(abstract("x", body), argument), 500)
    substituted = normalize(substitute(body, "x", argument), 500)
    if applied.isValue and substituted.isValue:
        assert applied.value == substituted.value


@settings(max_examples=60, deadline=None)
@given(term=closedTerms)
def test_printTerm_roundTrip(term):
    assert parseTerm(printTerm(term)) == term


def test_printTerm():
    assert printTerm(app(S, K, App(K, S))) == "S K (K S)"
    assert printTerm(parseTerm("((S)) (K)")) == "S K"
