"""
Unit Tests for the Continuation Machine

Functions:
    test_poleTest: Accept, Stuck and fuel exhaustion become the three verdicts.
    test_run_callcc: call/cc captures the stack and throwing restores it.
    test_run_delivery: A value reached under a continuation is delivered to it.
    test_checkMachineEquations: Both sides of the call/cc and throw equations agree.
    test_checkDne: call/cc realizes double negation elimination on the CPS tier only.
    test_liftK1Evidence: Proof-like partial evidence is re-verified on the CPS tier.
    test_checkDne_tables: Double negation elimination over table propositions.
    test_liftFrame: Every entailment of a validated partial frame lifts.
"""

import pytest

from controller.checkconstants import LAW_DNE, LAW_LIFT, LAW_MACHINE_EQUATIONS, LAW_POLE, LAW_PROOF_LIKE
from controller.errors import TierMismatchError
from controller.heyting import builtinAlgebra
from controller.loader import parseProposition
from controller.machine import (
    CONSTANT_ZERO,
    Computation,
    ContinuationCore,
    Machine,
    Process,
    RunOutcome,
    checkDne,
    checkMachineEquations,
    continuationPool,
    isFinal,
    isProofLike,
    judgeModality,
    liftFrame,
    liftK1Evidence,
    poleTest,
    renderProcess,
    renderTrace,
    step,
)
from controller.mca import Always, Code, EqualsTerm, Never, One, PartialCore
from controller.suite import DNE_BOUNDS, DNE_TABLES
from controller.term import CC, IDENTITY, K, S, Z0, App, Cont, app, codeUniverse, parseTerm
from objects.result import Verdict
from tests.conftest import createBounds

SELF_APPLY = parseTerm("S (S K K) (S K K)")


def test_poleTest():
    """
    GIVEN the continuation K Z0 and the argument S
    WHEN the pole is tested
    THEN the machine accepts after two steps and records a trace
    """
    result = poleTest(CONSTANT_ZERO, S, 10)
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_POLE
    assert result.steps == 2
    assert result.trace[-1] == "ACCEPT after 2 steps"


def test_poleTest_stuck():
    result = poleTest(K, S, 10)
    assert result.verdict == Verdict.COUNTEREXAMPLE
    assert result.witness["final"] == "⟨K ∣ S⟩"


def test_poleTest_outOfFuel():
    result = poleTest(SELF_APPLY, SELF_APPLY, 50)
    assert result.verdict == Verdict.INCONCLUSIVE
    assert result.steps == 50


def test_step():
    """
    GIVEN the process ⟨K S K ∣ ε⟩
    WHEN it is stepped
    THEN the application is unwound, K fires, and the process ⟨S ∣ ε⟩ is stuck
    """
    unwound = step(Process(app(K, S, K)))
    assert unwound == Process(App(K, S), (K,))
    assert step(Process(K, (S, K))) == Process(S)
    assert step(Process(S)) == RunOutcome.STUCK
    assert step(Process(Z0)) == RunOutcome.ACCEPT
    assert step(Process(K, (S, K)), fuel=0) == RunOutcome.OUT_OF_FUEL
    assert step(Process(CC, (K, S))) == Process(K, (Cont((S,)), S))


def test_isFinal():
    assert isFinal(Process(K, (S,)))
    assert not isFinal(Process(K, (S, K)))
    assert not isFinal(Process(CC, (K,)))
    assert isFinal(Process(Z0))


def test_run_callcc():
    """
    GIVEN ⟨CC ∣ K Z0⟩
    WHEN it runs
    THEN K Z0 receives the captured continuation and the machine accepts
    """
    run = Machine(10).run(Process(CC, (CONSTANT_ZERO,)))
    assert run.outcome == RunOutcome.ACCEPT
    assert run.steps == 3


def test_run_throw():
    run = Machine(10, recordTrace=True).run(Process(Cont(()), (Z0,)))
    assert run.outcome == RunOutcome.ACCEPT
    assert run.steps == 1
    assert [renderProcess(process) for process in run.trace] == ["⟨#[ | .] ∣ Z0⟩", "⟨Z0 ∣ ε⟩"]


def test_run_delivery():
    """
    GIVEN ⟨K ∣ S · K ∣ K Z0⟩
    WHEN it runs
    THEN S is delivered to K Z0, which then accepts
    """
    run = Machine(20).run(Process(K, (S, K), CONSTANT_ZERO))
    assert run.outcome == RunOutcome.ACCEPT
    assert run.deliveredTo(CONSTANT_ZERO) == [S]


def test_run_outOfFuel():
    run = Machine(0).run(Process(app(K, S, K)))
    assert run.outcome == RunOutcome.OUT_OF_FUEL
    assert renderTrace(run)[-1] == "OUT_OF_FUEL after 0 steps"


def test_isProofLike():
    assert isProofLike(app(S, K, CC))
    assert not isProofLike(App(K, Z0))
    assert not isProofLike(Cont(()))


def test_continuationPool():
    pool = continuationPool(createBounds("S,K:2:100:1"))
    assert pool == [S, K, Z0, Cont((), S), Cont((), K), Cont((), Z0)]


def test_checkMachineEquations():
    result = checkMachineEquations(
        codeUniverse(["S", "K"], 2), continuationPool(createBounds("S,K:2:1000:1")), 1000, depth=1
    )
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_MACHINE_EQUATIONS
    assert result.bounds["depth"] == 1


def test_modality_tierMismatch(cpsCore):
    with pytest.raises(TierMismatchError):
        cpsCore.modality(One(K), Always())


def test_judgeModality(cpsCore):
    """
    GIVEN the computation returning K
    WHEN ◇⟨x ∈ m⟩(=K) and ◇⟨x ∈ m⟩(Never) are judged
    THEN the first holds and the second is refuted by the first stuck continuation
    """
    assert judgeModality(cpsCore, Computation(Code(K)), EqualsTerm(K)).verdict == Verdict.VERIFIED
    refuted = judgeModality(cpsCore, Computation(Code(K)), Never())
    assert refuted.verdict == Verdict.COUNTEREXAMPLE
    assert refuted.witness["continuation"] == "S"
    assert refuted.trace[-1].startswith("STUCK")


def test_checkDne(cpsCore):
    """
    GIVEN the continuation tier
    WHEN double negation elimination is checked for =K
    THEN it is Verified with a call/cc trace
    """
    result = checkDne(cpsCore, EqualsTerm(K))
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_DNE
    assert result.trace


def test_checkDne_partial(partialCore):
    result = checkDne(partialCore, EqualsTerm(K))
    assert result.verdict == Verdict.COUNTEREXAMPLE
    assert result.witness["code"] == "S"
    assert result.trace == []


def test_liftK1Evidence(partialCore, cpsCore):
    lifted = liftK1Evidence(partialCore, cpsCore, IDENTITY, EqualsTerm(K), EqualsTerm(K))
    assert lifted.verdict == Verdict.VERIFIED
    assert lifted.law == LAW_LIFT
    assert lifted.witness["proofLike"] is True


def test_liftK1Evidence_notProofLike(partialCore, cpsCore):
    result = liftK1Evidence(partialCore, cpsCore, Z0, EqualsTerm(K), EqualsTerm(K))
    assert result.verdict == Verdict.COUNTEREXAMPLE
    assert result.law == LAW_PROOF_LIKE


def test_liftK1Evidence_failedPrecondition(partialCore, cpsCore):
    result = liftK1Evidence(partialCore, cpsCore, K, EqualsTerm(K), EqualsTerm(K))
    assert result.verdict == Verdict.COUNTEREXAMPLE
    assert result.law == LAW_LIFT
    assert result.witness["tier"] == "partial"


@pytest.fixture(name="dneCore", scope="module")
def dneCore_fixture() -> ContinuationCore:
    return ContinuationCore(createBounds(DNE_BOUNDS))


@pytest.mark.parametrize("text", DNE_TABLES)
def test_checkDne_tables(dneCore, text):
    """
    GIVEN codes of at most three leaves, pool continuations of at most three
    leaves and a fuel of 10000
    WHEN double negation elimination is checked for a table proposition
    THEN it is Verified and the report carries the call/cc run that ends in
    acceptance
    """
    result = checkDne(dneCore, parseProposition(text, dneCore.omega))
    assert result.verdict == Verdict.VERIFIED
    assert result.bounds["maxLeaves"] == 3
    assert result.bounds["poolLeaves"] == 3
    assert result.bounds["fuel"] == 10000
    assert result.trace[0].startswith("⟨CC ∣")
    assert result.trace[-1].startswith("ACCEPT")


def test_liftFrame():
    """
    GIVEN the partial and continuation tiers over codes of at most three leaves
    WHEN the validated partial frame is lifted
    THEN every entailment it verified is verified again on the CPS tier
    """
    bounds = createBounds("S,K:3:2000:2:2:1")
    result = liftFrame(PartialCore(builtinAlgebra("BOOL2"), bounds), ContinuationCore(bounds), bounds)
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_LIFT
    assert result.witness["total"] > 0
    assert result.witness["lifted"] == result.witness["total"]
    assert result.witness["rate"] == 1.0
    assert result.bounds["codes"] == 18
