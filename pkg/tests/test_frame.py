"""
Unit Tests for Evidenced Frames

Functions:
    test_validateFrame: The Heyting frames satisfy every construct row.
    test_validateFrame_brokenImplication: A wrong universal implication is caught.
    test_deductionForward: The derived modus ponens evidence.
    test_evidenceable: Evidence search against the top proposition.
    test_validateFrame_induced: The frames induced by both tiers satisfy every row.
"""

import pytest

from controller.checkconstants import LAW_DEDUCTION, LAW_UIMP_EVAL, LAW_UIMP_INTRO
from controller.errors import MalformedAlgebraError
from controller.frame import STAR, heytingFrame, validateFrame
from controller.heyting import builtinAlgebra
from controller.machine import ContinuationCore
from controller.mca import Always, And, EqualsTerm, InducedFrame, Never, PartialCore, inducedFrame
from controller.term import IDENTITY, K, S
from objects.result import Verdict
from tests.conftest import createBounds, createFrame


@pytest.mark.parametrize("name", ["BOOL2", "CHAIN3", "DIAMOND4"])
def test_validateFrame(name):
    """
    GIVEN the Heyting frame of a builtin algebra
    WHEN it is validated exhaustively
    THEN every row holds and the witness names ⋆ for every construct
    """
    result = validateFrame(createFrame(name))
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_UIMP_EVAL
    assert result.witness["eEval"] == STAR


def test_validateFrame_cappedFamilies(chain3):
    result = validateFrame(chain3, createBounds("S,K:1:0:1:1"))
    assert result.verdict == Verdict.VERIFIED
    assert result.bounds["psiCap"] == 1


def test_validateFrame_brokenImplication():
    """
    GIVEN CHAIN3 whose universal implication is a ∨ ⋀Ψ
    WHEN the frame is validated
    THEN introduction fails at φ1 = h, φ2 = 0
    """
    frame = heytingFrame(
        builtinAlgebra("CHAIN3"),
        uimpRule=lambda algebra, antecedent, consequents: algebra.join(antecedent, algebra.bigMeet(consequents)),
    )
    result = validateFrame(frame)
    assert result.verdict == Verdict.COUNTEREXAMPLE
    assert result.law == LAW_UIMP_INTRO
    assert result.witness["phi1"] == "h"
    assert result.witness["phi2"] == "0"


def test_heytingFrame_invalidAlgebra():
    with pytest.raises(MalformedAlgebraError):
        heytingFrame(builtinAlgebra("CHAIN3").replaced("imp", "h", "0", "h"))


def test_entails(chain3):
    assert chain3.entails("h", STAR, "1").verdict == Verdict.VERIFIED
    assert chain3.entails("1", STAR, "h").verdict == Verdict.COUNTEREXAMPLE
    assert chain3.entails("h", "e", "h").verdict == Verdict.COUNTEREXAMPLE


def test_deductionForward(chain3):
    """
    GIVEN evidence of ⊤ ⊢ φ ⊃ ψ and of ⊤ ⊢ φ
    WHEN they are combined
    THEN the composite evidences ⊤ ⊢ ψ; a missing premise is reported instead
    """
    composite, result = chain3.deductionForward(STAR, STAR, "1", "1")
    assert composite == STAR
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_DEDUCTION

    _, failed = chain3.deductionForward(STAR, STAR, "h", "h")
    assert failed.verdict == Verdict.COUNTEREXAMPLE
    assert failed.law == LAW_DEDUCTION


def test_evidenceable(chain3):
    assert chain3.evidenceable("1").verdict == Verdict.VERIFIED
    assert chain3.evidenceable(chain3.singletonImp("h", "h")).isVerified
    assert chain3.evidenceable("h").verdict == Verdict.COUNTEREXAMPLE


def test_neg(chain3):
    assert chain3.neg("h") == "0"
    assert chain3.neg("0") == "1"
    assert chain3.bigCoprod(["0", "h"]) == "h"


def test_inducedFrame_entails(partialCore):
    frame = inducedFrame(partialCore)
    assert isinstance(frame, InducedFrame)
    assert frame.entails(EqualsTerm(K), IDENTITY, EqualsTerm(K)).isVerified
    assert frame.entails(EqualsTerm(K), K, EqualsTerm(K)).isCounterexample
    assert frame.entails(EqualsTerm(S), frame.compose(IDENTITY, IDENTITY), EqualsTerm(S)).isVerified


@pytest.mark.parametrize("tier", ["partial", "cps"])
def test_validateFrame_induced(tier):
    """
    GIVEN the frame induced by a tier over S,K with codes of up to 4 leaves and fuel 10000
    WHEN it is validated
    THEN every construct row holds and the report records the enumerated terms and pairs
    """
    bounds = createBounds("S,K:4:10000:2:1:1")
    core = PartialCore(builtinAlgebra("BOOL2"), bounds) if tier == "partial" else ContinuationCore(bounds)
    result = validateFrame(inducedFrame(core), bounds)
    assert result.verdict == Verdict.VERIFIED
    assert result.bounds["enumerated"] == 102
    assert result.bounds["codes"] == 58
    assert result.bounds["pairs"] == 58 + 58 * 58


@pytest.mark.parametrize("tier", ["partial", "cps"])
def test_validateFrame_inducedImplicationIntro(tier):
    """
    GIVEN the induced frame over S,K with codes of up to 3 leaves and Ψ-subsets of two
    WHEN it is validated
    THEN λ-introduction holds because the pair premise of Always ∧ Always ⊢ Never fails
    """
    bounds = createBounds("S,K:3:2000:2:2:1")
    core = PartialCore(builtinAlgebra("BOOL2"), bounds) if tier == "partial" else ContinuationCore(bounds)
    frame = inducedFrame(core)
    premise = frame.entails(And(Always(), Always()), IDENTITY, Never())
    assert premise.verdict == Verdict.COUNTEREXAMPLE
    assert premise.witness["code"] == "P S S"
    assert validateFrame(frame, bounds).verdict == Verdict.VERIFIED
