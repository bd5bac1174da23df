"""
Unit Tests for the Partiality Tier

Functions:
    test_apply: Application results are One, Empty or Unknown.
    test_evaluate: Expressions evaluate left to right.
    test_checkEvidence: Entailment over the code universe, with all three verdicts.
    test_checkEvidence_conjunctionOverPairs: Conjunctive antecedents range over pairs of codes.
    test_checkAfterReturn: The unit is sound for the default propositions.
    test_liftedTruthValues: Meets, joins and implications with undetermined values.
"""

import pytest

from controller.checkconstants import LAW_AFTER_RETURN, LAW_EVIDENCE
from controller.errors import OpenTermError, TierMismatchError
from controller.heyting import builtinAlgebra
from controller.machine import Computation
from controller.mca import (
    DEFAULT_PROPOSITIONS,
    UNDETERMINED,
    Always,
    And,
    Bullet,
    Code,
    Coprod,
    Empty,
    EqualsTerm,
    EVar,
    MemberOf,
    Never,
    One,
    PartialCore,
    Table,
    TopologyApplied,
    Unknown,
    checkAfterReturn,
    checkEvidence,
    describeProposition,
    negation,
    tag,
)
from controller.term import FST, IDENTITY, K, P, S, App, app, parseTerm
from objects.result import Verdict
from tests.conftest import createBounds

OMEGA = parseTerm("S (S K K) (S K K) (S (S K K) (S K K))")


def test_apply(partialCore):
    """
    GIVEN the partiality tier
    WHEN codes are applied
    THEN values are One, a projection of a non-pair is Empty and divergence is Unknown
    """
    assert partialCore.apply(K, S) == One(App(K, S))
    assert partialCore.apply(IDENTITY, K) == One(K)
    assert partialCore.apply(FST, K) == Empty()
    assert partialCore.apply(App(K, OMEGA), S) == Unknown(200)


def test_evaluate(partialCore):
    assert partialCore.evaluate(Bullet(Code(K), Code(S))) == One(App(K, S))
    assert partialCore.evaluate(Bullet(Code(FST), Code(K))) == Empty()
    assert partialCore.evaluate(Bullet(Bullet(Code(FST), Code(K)), Code(S))) == Empty()
    with pytest.raises(OpenTermError):
        partialCore.evaluate(Bullet(Code(K), EVar("x")))


def test_modality(partialCore):
    assert partialCore.modality(One(K), EqualsTerm(K)) == "1"
    assert partialCore.modality(Empty(), Always()) == "0"
    assert partialCore.modality(Unknown(200), Always()) is UNDETERMINED
    with pytest.raises(TierMismatchError):
        partialCore.modality(Computation(Code(K)), Always())


def test_holds(partialCore):
    assert partialCore.holds(EqualsTerm(K), K) == "1"
    assert partialCore.holds(EqualsTerm(K), S) == "0"
    assert partialCore.holds(Table.fromMapping({S: "1"}, "0"), S) == "1"
    assert partialCore.holds(MemberOf(frozenset([S])), K) == "0"
    assert partialCore.holds(MemberOf(frozenset([S]), undetermined=True), K) is UNDETERMINED
    assert partialCore.holds(TopologyApplied("id", EqualsTerm(S)), S) == "1"
    # ¬(=K) is refuted everywhere since K is a code
    assert partialCore.holds(negation(EqualsTerm(K)), S) == "0"
    assert partialCore.holds(negation(negation(EqualsTerm(K))), S) == "1"


def test_holds_pairs():
    core = PartialCore(builtinAlgebra("BOOL2"), createBounds("S,K,P:3:200:1"))
    pair = app(P, K, S)
    assert pair in core.universe
    assert core.holds(And(EqualsTerm(K), EqualsTerm(S)), pair) == "1"
    assert core.holds(And(EqualsTerm(S), EqualsTerm(S)), pair) == "0"
    assert core.holds(Coprod((EqualsTerm(K), EqualsTerm(S))), app(P, tag(1), S)) == "1"
    assert core.holds(Coprod((EqualsTerm(K), EqualsTerm(S))), app(P, tag(0), S)) == "0"


def test_liftedTruthValues(partialCore):
    assert partialCore.meet("0", UNDETERMINED) == "0"
    assert partialCore.meet("1", UNDETERMINED) is UNDETERMINED
    assert partialCore.join("1", UNDETERMINED) == "1"
    assert partialCore.imp("0", UNDETERMINED) == "1"
    assert partialCore.imp(UNDETERMINED, "0") is UNDETERMINED
    assert partialCore.le(UNDETERMINED, "1") is True
    assert partialCore.le("1", UNDETERMINED) is None


def test_checkEvidence(partialCore):
    """
    GIVEN the identity and K as evidence for =K ⊢ =K
    WHEN the entailment is checked over the code universe
    THEN the identity is Verified and K fails at the code K
    """
    verified = checkEvidence(partialCore, IDENTITY, EqualsTerm(K), EqualsTerm(K))
    assert verified.verdict == Verdict.VERIFIED
    assert verified.law == LAW_EVIDENCE
    assert verified.bounds["tier"] == "partial"

    failed = checkEvidence(partialCore, K, EqualsTerm(K), EqualsTerm(K))
    assert failed.verdict == Verdict.COUNTEREXAMPLE
    assert failed.witness["code"] == "K"
    assert failed.witness["rhs"] == "0"


def test_checkEvidence_inconclusive():
    """
    GIVEN evidence that diverges on every argument and a small fuel budget
    WHEN Always ⊢ Always is checked
    THEN the verdict is Inconclusive and the budget is reported
    """
    core = PartialCore(builtinAlgebra("BOOL2"), createBounds("S,K:1:100:1"))
    result = checkEvidence(core, App(K, OMEGA), Always(), Always())
    assert result.verdict == Verdict.INCONCLUSIVE
    assert result.witness["budget"] == 100
    assert result.steps == 200


def test_checkEvidence_neverPremise(partialCore):
    result = checkEvidence(partialCore, K, Never(), EqualsTerm(S))
    assert result.verdict == Verdict.VERIFIED
    assert result.steps == 0


def test_checkAfterReturn(partialCore):
    result = checkAfterReturn(partialCore, DEFAULT_PROPOSITIONS)
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_AFTER_RETURN


def test_describeProposition():
    assert describeProposition(EqualsTerm(K)) == "=K"
    assert describeProposition(And(Always(), Never())) == "(Always ∧ Never)"
    assert describeProposition(negation(EqualsTerm(S))) == "(=S ⊃ {Never})"
    assert describeProposition(MemberOf(frozenset([S, K]), True)) == "∈{K, S}?"


def test_checkEvidence_stuckCodesExcluded():
    """
    GIVEN a universe over S,K,P,FST,SND whose enumeration contains stuck projections such as FST S
    WHEN the identity is checked as evidence of Always ⊢ Always
    THEN it is Verified and the report counts the stuck terms that gave no code
    """
    core = PartialCore(builtinAlgebra("BOOL2"), createBounds("S,K,P,FST,SND:3:2000:2:2:1"))
    assert App(FST, S) not in core.universe
    result = checkEvidence(core, IDENTITY, Always(), Always())
    assert result.verdict == Verdict.VERIFIED
    assert result.bounds["stuck"] > 0
    assert result.bounds["codes"] == len(core.universe)
    assert "pairs" not in result.bounds


def test_checkEvidence_conjunctionOverPairs(partialCore):
    """
    GIVEN the conjunction =K ∧ =S, which holds only at pairs
    WHEN FST is checked as evidence of =K ∧ =S ⊢ =K and of =K ∧ =S ⊢ =S
    THEN the first is Verified over the pairs of codes and the second fails at P K S
    """
    verified = checkEvidence(partialCore, FST, And(EqualsTerm(K), EqualsTerm(S)), EqualsTerm(K))
    assert verified.verdict == Verdict.VERIFIED
    assert verified.bounds["pairs"] == len(partialCore.pairs)
    assert app(P, K, S) in partialCore.codesFor(And(Always(), Always()))

    failed = checkEvidence(partialCore, FST, And(EqualsTerm(K), EqualsTerm(S)), EqualsTerm(S))
    assert failed.verdict == Verdict.COUNTEREXAMPLE
    assert failed.witness["code"] == "P K S"
