"""
This module provides the continuation-passing tier: a stack machine with
call/cc over the term codes, the pole, the continuation pool, the CPS
modality and the operational checks built on them.
Classes:
    Process:
        Machine state ⟨head ∣ stack ∣ continuation⟩.
    RunOutcome(str, Enum):
        ACCEPT, STUCK or OUT_OF_FUEL, and DELIVERED for runs asked to stop at
        their first delivery.
    Run:
        Terminal state of a run with its deliveries and optional trace.
    Machine:
        Deterministic stepper with a fuel budget.
    Computation:
        Monadic value of the continuation tier: a closed expression run
        against a continuation.
    ContinuationCore(MonadicCore):
        The continuation tier with the pool-bounded modality.
Functions:
    step(process, fuel), poleTest(k, a, fuel), judgeModality(core, computation, prop),
    isProofLike(term), continuationPool(bounds), checkDne(core, prop),
    liftK1Evidence(partialCore, cpsCore, evidence, phi, psi),
    liftFrame(partialCore, cpsCore, bounds),
    checkMachineEquations(universe, pool, fuel, depth), renderTrace(run).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from controller.checkconstants import (
    LAW_DNE,
    LAW_LIFT,
    LAW_MACHINE_EQUATIONS,
    LAW_MODALITY,
    LAW_POLE,
    LAW_PROOF_LIKE,
)
from controller.errors import OpenTermError, TierMismatchError
from controller.frame import validateFrame
from controller.heyting import HeytingAlgebra, builtinAlgebra
from controller.mca import (
    UNDETERMINED,
    Bullet,
    Code,
    Expression,
    InducedFrame,
    MonadicCore,
    Proposition,
    checkEvidence,
    describeProposition,
    isClosedExpression,
    negation,
    printExpression,
)
from controller.term import (
    CC,
    FST,
    K,
    P,
    S,
    SND,
    Z0,
    App,
    Cont,
    Term,
    abstract,
    app,
    enumerateTerms,
    normalize,
    orderedBasis,
    printTerm,
    reduce,
    unwind,
)
from objects.bounds import Bounds
from objects.result import CheckResult

logger = logging.getLogger(__name__)

PROOF_LIKE_ATOMS = frozenset([S, K, CC, P, FST, SND])
CONSTANT_ZERO = abstract("x", Z0)
DNE_EVIDENCE = abstract("z", CC)


@dataclass(frozen=True)
class Process:
    head: Term
    stack: Tuple[Term, ...] = ()
    cont: Optional[Term] = None


def isFinal(process: Process) -> bool:
    """
    True when no transition rule applies to the head and stack of a process.
    """
    head, stack = process.head, process.stack
    if isinstance(head, App):
        return False
    if head == K:
        return len(stack) < 2
    if head == S:
        return len(stack) < 3
    if head in (FST, SND, CC) or isinstance(head, Cont):
        return not stack
    return True


class RunOutcome(str, Enum):
    ACCEPT = "ACCEPT"
    STUCK = "STUCK"
    OUT_OF_FUEL = "OUT_OF_FUEL"
    DELIVERED = "DELIVERED"


@dataclass
class Run:
    outcome: RunOutcome
    steps: int
    final: Process
    deliveries: Tuple[Tuple[Term, Term], ...] = ()
    trace: Tuple[Process, ...] = ()

    def deliveredTo(self, continuation: Term) -> List[Term]:
        return [value for target, value in self.deliveries if target == continuation]


class Machine:
    """
    Stepper for processes ⟨head ∣ stack ∣ continuation⟩. Every transition
    costs one unit of fuel, and so does every rule fired while bringing a
    projected argument to head form or normalizing a delivered value.
    """

    def __init__(self, fuel: int, recordTrace: bool = False):
        self.fuel = fuel
        self.used = 0
        self.recordTrace = recordTrace
        self.deliveries: List[Tuple[Term, Term]] = []

    @property
    def remaining(self) -> int:
        return self.fuel - self.used

    def _normalize(self, term: Term) -> Optional[Term]:
        outcome = normalize(term, self.remaining)
        self.used += outcome.steps
        return outcome.value

    def _headForm(self, term: Term) -> Optional[Term]:
        outcome = reduce(term, self.remaining)
        self.used += outcome.steps
        return outcome.value

    def step(self, process: Process) -> Union[Process, RunOutcome]:
        """
        Performs one transition.
        Returns:
            Process | RunOutcome: The next process, or the terminal outcome
            when no rule applies or fuel ran out.
        """
        head, stack, cont = process.head, process.stack, process.cont
        if cont is None and isFinal(process):
            return RunOutcome.ACCEPT if head == Z0 and not stack else RunOutcome.STUCK
        if self.remaining <= 0:
            return RunOutcome.OUT_OF_FUEL
        self.used += 1
        if isinstance(head, App):
            return Process(head.left, (head.right,) + stack, cont)
        if head == K and len(stack) >= 2:
            return Process(stack[0], stack[2:], cont)
        if head == S and len(stack) >= 3:
            a, b, c = stack[:3]
            return Process(a, (c, App(b, c)) + stack[3:], cont)
        if head in (FST, SND) and stack:
            inner = self._headForm(stack[0])
            if inner is None:
                return RunOutcome.OUT_OF_FUEL
            innerHead, innerArgs = unwind(inner)
            if innerHead == P and len(innerArgs) == 2:
                return Process(innerArgs[0] if head == FST else innerArgs[1], stack[1:], cont)
            return RunOutcome.STUCK
        if head == CC and stack:
            rest = stack[1:]
            return Process(stack[0], (Cont(rest, cont),) + rest, cont)
        if isinstance(head, Cont) and stack:
            return Process(stack[0], head.stack, head.cont)
        value = self._normalize(app(head, *stack))
        if value is None:
            return RunOutcome.OUT_OF_FUEL
        self.deliveries.append((cont, value))
        return Process(cont, (value,), None)

    def run(self, process: Process, seed: Sequence[Tuple[Term, Term]] = (), stopAtDelivery: bool = False) -> Run:
        """
        Steps `process` until a terminal outcome.
        Args:
            process (Process): Initial state.
            seed (Sequence[Tuple[Term, Term]]): Deliveries made before the run
                started, as (continuation, value) pairs.
            stopAtDelivery (bool): End with DELIVERED as soon as a value is
                handed to a continuation.
        """
        self.deliveries = list(seed)
        trace = [process] if self.recordTrace else []
        current = process
        while True:
            following = self.step(current)
            if isinstance(following, RunOutcome):
                return Run(following, self.used, current, tuple(self.deliveries), tuple(trace))
            current = following
            if self.recordTrace:
                trace.append(current)
            if stopAtDelivery and len(self.deliveries) > len(seed):
                return Run(RunOutcome.DELIVERED, self.used, current, tuple(self.deliveries), tuple(trace))


def step(process: Process, fuel: int = 1) -> Union[Process, RunOutcome]:
    return Machine(fuel).step(process)


def renderProcess(process: Process) -> str:
    stack = " · ".join(printTerm(item) for item in process.stack) or "ε"
    line = f"⟨{printTerm(process.head)} ∣ {stack}"
    if process.cont is not None:
        line += f" ∣ {printTerm(process.cont)}"
    return line + "⟩"


def renderTrace(run: Run) -> List[str]:
    """
    One line per visited state followed by the terminal verdict.
    """
    lines = [renderProcess(process) for process in (run.trace or (run.final,))]
    lines.append(f"{run.outcome.value} after {run.steps} steps")
    return lines


def poleTest(k: Term, a: Term, fuel: int) -> CheckResult:
    """
    Decides k ⊥ a by running ⟨k ∣ a⟩: Accept is Verified, Stuck is a
    Counterexample and fuel exhaustion is Inconclusive.
    """
    run = Machine(fuel, recordTrace=True).run(Process(k, (a,)))
    witness = {"continuation": printTerm(k), "argument": printTerm(a), "final": renderProcess(run.final)}
    trace = renderTrace(run)
    bounds = {"fuel": fuel}
    if run.outcome == RunOutcome.ACCEPT:
        return CheckResult.verified(LAW_POLE, witness=witness, bounds=bounds, steps=run.steps, trace=trace)
    if run.outcome == RunOutcome.STUCK:
        return CheckResult.counterexample(LAW_POLE, witness=witness, bounds=bounds, steps=run.steps, trace=trace)
    return CheckResult.inconclusive(LAW_POLE, witness=witness, bounds=bounds, steps=run.steps, trace=trace)


def isProofLike(term: Term) -> bool:
    """
    True iff the term is an application tree of S, K, CC, P, FST and SND.
    """
    if isinstance(term, App):
        return isProofLike(term.left) and isProofLike(term.right)
    return term in PROOF_LIKE_ATOMS


def continuationPool(bounds: Bounds) -> List[Term]:
    """
    Terms over the universe basis plus Z0 up to `poolLeaves` leaves, followed
    by the throw-wrapping of each of them.
    """
    basis = orderedBasis(list(bounds.basis) + [Z0.name])
    terms = enumerateTerms(basis, bounds.poolLeaves)
    return terms + [Cont((), k) for k in terms]


@dataclass(frozen=True)
class Computation:
    expression: Expression


def _isPure(term: Term) -> bool:
    """
    True for a term that can neither capture nor resume a continuation.
    """
    if isinstance(term, Cont):
        return False
    if isinstance(term, App):
        return _isPure(term.left) and _isPure(term.right)
    return term != CC


# stands in for the pool continuation while a pure computation runs up to its delivery
HALT = Cont(())


class ContinuationCore(MonadicCore):
    """
    The continuation tier. A computation m is judged against every pool
    continuation k: the k-th term is 𝟏 when m ⊥ k and otherwise
    (⨅_a φ(a) ⊐ k ⊥ a) ⊐ 𝟎, with a ranging over the code universe and the
    values m delivered to k. Fuel is per machine run; the total is reported.

    A pure application `e·c` (no CC, no captured continuation) cannot see its
    continuation, so its run is the same for every k up to the delivery of its
    value v and continues as ⟨k ∣ v⟩ from there. Such computations are judged
    from v once, and the per-k outcome is only reused while the steps before
    the delivery plus the steps of ⟨k ∣ v⟩ fit into the fuel.
    """

    tier = "cps"

    def __init__(self, bounds: Bounds, omega: Optional[HeytingAlgebra] = None):
        super().__init__(omega or builtinAlgebra("BOOL2"), bounds)
        self.pool = continuationPool(bounds)
        self._poles: Dict[Tuple[Term, Term], Tuple[RunOutcome, int]] = {}
        self._runs = {}
        self._judgments = {}
        self._prefixes: Dict[Computation, Tuple[RunOutcome, Optional[Term], int]] = {}
        self._premises = {}
        self._valueJudgments = {}

    def unit(self, code: Term) -> Computation:
        return Computation(Code(code))

    def apply(self, code: Term, argument: Term) -> Computation:
        return Computation(Bullet(Code(code), Code(argument)))

    def evaluate(self, expression: Expression) -> Computation:
        if not isClosedExpression(expression):
            raise OpenTermError(f"cannot evaluate open expression {printExpression(expression)}")
        return Computation(expression)

    def inSeparator(self, term: Term) -> bool:
        return isProofLike(term)

    def _poleRun(self, k: Term, a: Term) -> Tuple[RunOutcome, int]:
        key = (k, a)
        if key not in self._poles:
            run = Machine(self.bounds.fuel).run(Process(k, (a,)))
            self.steps += run.steps
            self._poles[key] = (run.outcome, run.steps)
        return self._poles[key]

    def _truth(self, outcome: RunOutcome):
        if outcome == RunOutcome.ACCEPT:
            return self.omega.top
        if outcome == RunOutcome.STUCK:
            return self.omega.bottom
        return UNDETERMINED

    def pole(self, k: Term, a: Term):
        return self._truth(self._poleRun(k, a)[0])

    def _value(self, expression: Expression) -> Optional[Term]:
        if isinstance(expression, Code):
            return expression.term
        run = Machine(self.bounds.fuel).run(self._start(expression, None))
        self.steps += run.steps
        if run.outcome == RunOutcome.OUT_OF_FUEL:
            return None
        return normalize(app(run.final.head, *run.final.stack), self.bounds.fuel).value

    def _start(self, expression: Expression, cont: Optional[Term]) -> Optional[Process]:
        if isinstance(expression, Code):
            return Process(cont, (expression.term,)) if cont is not None else Process(expression.term)
        argument = self._value(expression.right)
        if argument is None:
            return None
        if isinstance(expression.left, Code):
            return Process(expression.left.term, (argument,), cont)
        return self._start(expression.left, Cont((argument,), cont))

    def runAgainst(self, computation: Computation, k: Term, recordTrace: bool = False) -> Run:
        """
        Runs m ⊥ k. A Code computation starts by delivering its code to k; a
        Bullet starts at its operator with k as continuation.
        """
        key = (computation, k)
        if key in self._runs and not recordTrace:
            return self._runs[key]
        process = self._start(computation.expression, k)
        if process is None:
            run = Run(RunOutcome.OUT_OF_FUEL, self.bounds.fuel, Process(k))
        else:
            seed = [(k, computation.expression.term)] if isinstance(computation.expression, Code) else []
            run = Machine(self.bounds.fuel, recordTrace=recordTrace).run(process, seed)
        self.steps += run.steps
        if not recordTrace:
            self._runs[key] = run
        return run

    def _prefix(self, computation: Computation) -> Optional[Tuple[RunOutcome, Optional[Term], int]]:
        """
        For a code, or a pure application of a code to a code, the part of its
        run that does not depend on the continuation: DELIVERED with the value
        and the steps used, or STUCK / OUT_OF_FUEL before any delivery. None
        for every other computation.
        """
        expression = computation.expression
        if isinstance(expression, Code):
            return RunOutcome.DELIVERED, expression.term, 0
        if not (isinstance(expression.left, Code) and isinstance(expression.right, Code)):
            return None
        operator, operand = expression.left.term, expression.right.term
        if not (_isPure(operator) and _isPure(operand)):
            return None
        if computation not in self._prefixes:
            run = Machine(self.bounds.fuel).run(Process(operator, (operand,), HALT), stopAtDelivery=True)
            self.steps += run.steps
            value = run.deliveries[-1][1] if run.outcome == RunOutcome.DELIVERED else None
            self._prefixes[computation] = (run.outcome, value, run.steps)
        return self._prefixes[computation]

    def modality(self, value, prop: Proposition):
        if not isinstance(value, Computation):
            raise TierMismatchError(f"{type(value).__name__} is not a value of the continuation tier")
        key = (value, prop)
        if key not in self._judgments:
            self._judgments[key] = self._judge(value, prop)[0]
        return self._judgments[key]

    def _premise(self, k: Term, prop: Proposition, delivered: Sequence[Term]):
        key = (k, prop)
        if key not in self._premises:
            result = self.omega.top
            for a in self.codesFor(prop):
                result = self.meet(result, self.imp(self.holds(prop, a), self.pole(k, a)))
                if result == self.omega.bottom:
                    break
            self._premises[key] = result
        result = self._premises[key]
        for a in delivered:
            if result == self.omega.bottom:
                break
            result = self.meet(result, self.imp(self.holds(prop, a), self.pole(k, a)))
        return result

    def _judgeDelivered(self, value: Term, prop: Proposition, used: int):
        result, refuting, longest = self.omega.top, None, 0
        for k in self.pool:
            outcome, steps = self._poleRun(k, value)
            if outcome != RunOutcome.OUT_OF_FUEL:
                longest = max(longest, steps)
            if used + steps > self.bounds.fuel:
                outcome = RunOutcome.OUT_OF_FUEL
            if outcome == RunOutcome.ACCEPT:
                continue
            term = self.imp(self._premise(k, prop, (value,)), self._truth(outcome))
            result = self.meet(result, term)
            if term != self.omega.top and refuting is None:
                refuting = k
            if result == self.omega.bottom:
                break
        return result, refuting, longest

    def _judgeUndelivered(self, prop: Proposition, accepted):
        result, refuting = self.omega.top, None
        for k in self.pool:
            term = self.imp(self._premise(k, prop, ()), accepted)
            result = self.meet(result, term)
            if term != self.omega.top and refuting is None:
                refuting = k
            if result == self.omega.bottom:
                break
        return result, refuting

    def _judge(self, computation: Computation, prop: Proposition):
        prefix = self._prefix(computation)
        if prefix is not None:
            outcome, value, used = prefix
            if outcome == RunOutcome.DELIVERED:
                key = (value, prop)
                if key not in self._valueJudgments:
                    self._valueJudgments[key] = self._judgeDelivered(value, prop, 0)
                result, refuting, longest = self._valueJudgments[key]
                if used + longest <= self.bounds.fuel:
                    return result, refuting
                return self._judgeDelivered(value, prop, used)[:2]
            return self._judgeUndelivered(prop, self._truth(outcome))
        result = self.omega.top
        refuting = None
        for k in self.pool:
            run = self.runAgainst(computation, k)
            if run.outcome == RunOutcome.ACCEPT:
                continue
            accepted = self.omega.bottom if run.outcome == RunOutcome.STUCK else UNDETERMINED
            term = self.imp(self._premise(k, prop, run.deliveredTo(k)), accepted)
            result = self.meet(result, term)
            if term != self.omega.top and refuting is None:
                refuting = k
            if result == self.omega.bottom:
                break
        return result, refuting


def judgeModality(core: ContinuationCore, computation: Computation, prop: Proposition) -> CheckResult:
    """
    Judges ◇⟨x ∈ m⟩φ(x) over the pool and reports it as a check: Verified for
    𝟏, Counterexample naming the refuting continuation, Inconclusive when a
    run ran out of fuel.
    """
    value, refuting = core._judge(computation, prop)
    witness = {
        "computation": printExpression(computation.expression),
        "phi": describeProposition(prop),
        "value": str(value),
        "pool": len(core.pool),
    }
    bounds = core.describeBounds()
    if value == core.omega.top:
        return CheckResult.verified(LAW_MODALITY, witness=witness, bounds=bounds, steps=core.steps)
    if value is UNDETERMINED:
        return CheckResult.inconclusive(LAW_MODALITY, witness=witness, bounds=bounds, steps=core.steps)
    witness["continuation"] = printTerm(refuting)
    trace = renderTrace(core.runAgainst(computation, refuting, recordTrace=True))
    return CheckResult.counterexample(LAW_MODALITY, witness=witness, bounds=bounds, steps=core.steps, trace=trace)


def checkDne(core: MonadicCore, prop: Proposition) -> CheckResult:
    """
    Checks that CC realizes ¬¬φ ⊃ φ: for every code c with (¬¬φ)(c) = 𝟏 the
    judgment ◇⟨r ∈ CC·c⟩φ(r) must be 𝟏. The evidence of the implication is
    λz.CC. Verified reports carry a machine trace of a call/cc run.
    Args:
        core (MonadicCore): The tier; on the partiality tier CC is inert.
        prop (Proposition): φ.
    Returns:
        CheckResult: Verified, Counterexample at the first failing code, or
        Inconclusive.
    """
    logger.debug("checking double negation elimination for %s on the %s tier", describeProposition(prop), core.tier)
    doubled = negation(negation(prop))
    bounds = {**core.describeBounds(), "evidence": printTerm(DNE_EVIDENCE)}
    if isinstance(core, ContinuationCore):
        bounds["pool"] = len(core.pool)
    pending = None
    traced = None
    for code in core.universe:
        premise = core.holds(doubled, code)
        if premise == core.omega.bottom:
            continue
        if traced is None:
            traced = code
        judgment = core.modality(core.apply(CC, code), prop)
        verdict = core.le(premise, judgment)
        if verdict is False:
            logger.info("double negation elimination fails for %s at %s", describeProposition(prop), printTerm(code))
            return CheckResult.counterexample(
                LAW_DNE,
                witness={
                    "code": printTerm(code),
                    "phi": describeProposition(prop),
                    "doubleNegation": str(premise),
                    "judgment": str(judgment),
                },
                bounds=bounds,
                steps=core.steps,
                trace=_ccTrace(core, code),
            )
        if verdict is None and pending is None:
            pending = code
    if pending is not None:
        return CheckResult.inconclusive(
            LAW_DNE, witness={"code": printTerm(pending), "phi": describeProposition(prop)}, bounds=bounds, steps=core.steps
        )
    return CheckResult.verified(
        LAW_DNE,
        witness={"phi": describeProposition(prop), "evidence": printTerm(DNE_EVIDENCE)},
        bounds=bounds,
        steps=core.steps,
        trace=_ccTrace(core, traced if traced is not None else core.universe[0]) if core.universe else [],
    )


def _ccTrace(core: MonadicCore, code: Term) -> List[str]:
    if not isinstance(core, ContinuationCore):
        return []
    return renderTrace(core.runAgainst(core.apply(CC, code), CONSTANT_ZERO, recordTrace=True))


def liftK1Evidence(
    partialCore: MonadicCore,
    cpsCore: ContinuationCore,
    evidence: Term,
    phi: Proposition,
    psi: Proposition,
) -> CheckResult:
    """
    Re-verifies partial-tier evidence on the continuation tier. Evidence built
    from the proof-like generators needs no translation, so the same term is
    checked again under the CPS modality.
    Returns:
        CheckResult: Counterexample with law "proof-like" when the evidence is
        not proof-like, the failed precondition when it does not evidence
        φ ⊢ ψ on the partial tier, else the CPS check under law "lift".
    """
    if not isProofLike(evidence):
        return CheckResult.counterexample(LAW_PROOF_LIKE, witness={"evidence": printTerm(evidence)})
    precondition = checkEvidence(partialCore, evidence, phi, psi)
    if not precondition.isVerified:
        return precondition.model_copy(update={"law": LAW_LIFT, "witness": {**precondition.witness, "tier": partialCore.tier}})
    lifted = checkEvidence(cpsCore, evidence, phi, psi)
    if lifted.isCounterexample:
        logger.info("evidence %s does not lift to the %s tier", printTerm(evidence), cpsCore.tier)
    return lifted.model_copy(update={"law": LAW_LIFT, "witness": {**lifted.witness, "proofLike": True}})


def liftFrame(partialCore: MonadicCore, cpsCore: ContinuationCore, bounds: Optional[Bounds] = None) -> CheckResult:
    """
    Validates the induced frame of `partialCore`, then lifts every entailment
    the validation found Verified to the continuation tier.
    Returns:
        CheckResult: The failed validation, the first entailment that does not
        lift, or Verified with the lifted and total counts and the lift rate.
    """
    frame = InducedFrame(partialCore)
    validated = validateFrame(frame, bounds)
    if not validated.isVerified:
        return validated.model_copy(update={"witness": {**validated.witness, "tier": partialCore.tier}})
    entailments = frame.verifiedEntailments()
    logger.debug("lifting %d entailments from the %s tier", len(entailments), partialCore.tier)
    steps = 0
    for lifted, (phi, evidence, psi) in enumerate(entailments):
        result = liftK1Evidence(partialCore, cpsCore, evidence, phi, psi)
        steps += result.steps
        if not result.isVerified:
            witness = {
                **result.witness,
                "phi": describeProposition(phi),
                "evidence": printTerm(evidence),
                "psi": describeProposition(psi),
                "lifted": lifted,
                "total": len(entailments),
            }
            return result.model_copy(update={"witness": witness, "steps": steps})
    return CheckResult.verified(
        LAW_LIFT,
        witness={"lifted": len(entailments), "total": len(entailments), "rate": 1.0},
        bounds=frame.describeBounds(bounds),
        steps=steps,
    )


def _stacks(pool: Sequence[Term], depth: int) -> List[Tuple[Term, ...]]:
    stacks = []
    for size in range(depth + 1):
        stacks.extend(product(pool, repeat=size))
    return stacks


def _settle(run: Run, fuel: int):
    final = normalize(app(run.final.head, *run.final.stack), fuel).value
    return run.outcome, final


def checkMachineEquations(universe: Sequence[Term], pool: Sequence[Term], fuel: int, depth: int = 2) -> CheckResult:
    """
    Checks the call/cc and throw equations as trace equalities:
    ⟨CC ∣ c·σ⟩ against ⟨c ∣ Cont(σ)·σ⟩, and ⟨Cont(σ) ∣ c·σ′⟩ against ⟨c ∣ σ⟩,
    for every code c and pool stacks σ of at most `depth` items (σ′ of at most
    one). Both sides must reach the same outcome with the same normalized
    final term.
    """
    stacks = _stacks(pool, depth)
    shortStacks = _stacks(pool, min(depth, 1))
    pending = None
    total = 0
    for code, stack in product(universe, stacks):
        pairs = [("call/cc", Process(CC, (code,) + stack), Process(code, (Cont(stack),) + stack))]
        pairs.extend(
            ("throw", Process(Cont(stack), (code,) + other), Process(code, stack)) for other in shortStacks
        )
        for equation, left, right in pairs:
            leftRun = Machine(fuel).run(left)
            rightRun = Machine(fuel).run(right)
            total += leftRun.steps + rightRun.steps
            if RunOutcome.OUT_OF_FUEL in (leftRun.outcome, rightRun.outcome):
                if leftRun.outcome != rightRun.outcome and pending is None:
                    pending = {"equation": equation, "left": renderProcess(left), "right": renderProcess(right)}
                continue
            if _settle(leftRun, fuel) != _settle(rightRun, fuel):
                return CheckResult.counterexample(
                    LAW_MACHINE_EQUATIONS,
                    witness={
                        "equation": equation,
                        "left": renderProcess(left),
                        "right": renderProcess(right),
                        "leftFinal": renderProcess(leftRun.final),
                        "rightFinal": renderProcess(rightRun.final),
                    },
                    steps=total,
                )
    bounds = {"codes": len(universe), "pool": len(pool), "depth": depth, "fuel": fuel}
    if pending is not None:
        return CheckResult.inconclusive(LAW_MACHINE_EQUATIONS, witness=pending, bounds=bounds, steps=total)
    return CheckResult.verified(LAW_MACHINE_EQUATIONS, witness={"stacks": len(stacks)}, bounds=bounds, steps=total)
