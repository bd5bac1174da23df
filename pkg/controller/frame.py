"""
This module provides the evidenced frame interface, its derived connectives,
the trivial frames built from finite Heyting algebras, and the frame law checker.
Classes:
    EvidencedFrame(ABC):
        Propositions, evidences, the evidence relation, the constructs
        (identity, composition, top, pairing, projections, λ, eval) and the
        connectives (top, conjunction, universal implication).
    HeytingFrame(EvidencedFrame):
        The degenerate frame with a single evidence ⋆ and φ ⊢⋆ ψ iff φ ≤ ψ.
    TableFrame(EvidencedFrame):
        A finite frame read from explicit relation, construct and connective tables.
Functions:
    heytingFrame(algebra, uimpRule) -> HeytingFrame
    validateFrame(frame, bounds) -> CheckResult:
        Checks every construct row over sampled propositions and Ψ-subsets.
"""

import logging
from abc import ABC, abstractmethod
from itertools import combinations, product
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from controller.checkconstants import (
    LAW_CONJUNCTION,
    LAW_DEDUCTION,
    LAW_EVIDENCE,
    LAW_REFLEXIVITY,
    LAW_TOP,
    LAW_TRANSITIVITY,
    LAW_UIMP_EVAL,
    LAW_UIMP_INTRO,
)
from controller.heyting import HeytingAlgebra, validateAlgebra
from controller.errors import MalformedAlgebraError
from objects.bounds import Bounds
from objects.result import CheckResult

logger = logging.getLogger(__name__)

Proposition = Hashable
Evidence = Hashable

STAR = "*"


class EvidencedFrame(ABC):
    """
    Abstract evidenced frame. Subclasses supply the relation, the samples the
    law checker quantifies over, the constructs and the three connectives;
    everything else is derived here.
    """

    name: str = "frame"

    def __init__(self):
        self._entailments = {}

    # relation

    def entails(self, phi: Proposition, evidence: Evidence, psi: Proposition) -> CheckResult:
        """
        Decides φ ⊢e ψ, memoized per (φ, e, ψ).
        """
        key = (phi, evidence, psi)
        if key not in self._entailments:
            self._entailments[key] = self._entails(phi, evidence, psi)
        return self._entailments[key]

    def verifiedEntailments(self) -> List[Tuple[Proposition, Evidence, Proposition]]:
        """
        The (φ, e, ψ) triples decided so far whose result was Verified, in
        the order they were first asked.
        """
        return [key for key, result in self._entailments.items() if result.isVerified]

    @abstractmethod
    def _entails(self, phi: Proposition, evidence: Evidence, psi: Proposition) -> CheckResult: ...

    @abstractmethod
    def propositionSample(self) -> List[Proposition]: ...

    @abstractmethod
    def evidenceSample(self) -> List[Evidence]: ...

    def describe(self, item: Any) -> str:
        return str(item)

    def describeBounds(self, bounds: Optional[Bounds]) -> Dict[str, Any]:
        return bounds.describe() if bounds is not None else {"exhaustive": True}

    # constructs

    @property
    @abstractmethod
    def eId(self) -> Evidence: ...

    @property
    @abstractmethod
    def eTop(self) -> Evidence: ...

    @property
    @abstractmethod
    def eFst(self) -> Evidence: ...

    @property
    @abstractmethod
    def eSnd(self) -> Evidence: ...

    @property
    @abstractmethod
    def eEval(self) -> Evidence: ...

    @abstractmethod
    def compose(self, first: Evidence, second: Evidence) -> Evidence: ...

    @abstractmethod
    def pair(self, first: Evidence, second: Evidence) -> Evidence: ...

    @abstractmethod
    def lam(self, evidence: Evidence) -> Evidence: ...

    # connectives

    @property
    @abstractmethod
    def top(self) -> Proposition: ...

    @abstractmethod
    def conj(self, left: Proposition, right: Proposition) -> Proposition: ...

    @abstractmethod
    def uimp(self, antecedent: Proposition, consequents: Sequence[Proposition]) -> Proposition: ...

    # derived connectives

    def singletonImp(self, antecedent: Proposition, consequent: Proposition) -> Proposition:
        return self.uimp(antecedent, (consequent,))

    def iff(self, left: Proposition, right: Proposition) -> Proposition:
        return self.conj(self.singletonImp(left, right), self.singletonImp(right, left))

    def bigPi(self, family: Sequence[Proposition]) -> Proposition:
        return self.uimp(self.top, tuple(family))

    @property
    def bottom(self) -> Proposition:
        return self.bigPi(self.propositionSample())

    def bigCoprod(self, family: Sequence[Proposition]) -> Proposition:
        """
        ∐Ψ as Π{ Π{ψ ⊃ φ | ψ ∈ Ψ} ⊃ φ | φ ∈ Φ }, with Φ the proposition sample.
        """
        family = tuple(family)
        return self.bigPi(
            [
                self.singletonImp(self.bigPi([self.singletonImp(psi, phi) for psi in family]), phi)
                for phi in self.propositionSample()
            ]
        )

    def neg(self, phi: Proposition) -> Proposition:
        return self.singletonImp(phi, self.bottom)

    def evidenceCandidates(self) -> List[Evidence]:
        return self.evidenceSample()

    def evidenceable(self, phi: Proposition, law: str = LAW_EVIDENCE) -> CheckResult:
        """
        Searches the evidence candidates, in order, for some e with ⊤ ⊢e φ.
        Returns:
            CheckResult: Verified with the found evidence, Inconclusive when no
            candidate worked and some run ran out of budget, Counterexample
            otherwise.
        """
        pending = None
        for evidence in self.evidenceCandidates():
            result = self.entails(self.top, evidence, phi)
            if result.isVerified:
                return CheckResult.verified(
                    law, witness={"evidence": self.describe(evidence), "proposition": self.describe(phi)}, steps=result.steps
                )
            if result.isInconclusive and pending is None:
                pending = result
        if pending is not None:
            return CheckResult.inconclusive(law, witness={"proposition": self.describe(phi), **pending.witness})
        return CheckResult.counterexample(law, witness={"proposition": self.describe(phi), "reason": "no evidence found"})

    def deductionForward(
        self,
        implicationEvidence: Evidence,
        antecedentEvidence: Evidence,
        antecedent: Proposition,
        consequent: Proposition,
    ) -> Tuple[Evidence, CheckResult]:
        """
        Combines e (for ⊤ ⊢ φ ⊃ ψ) and e′ (for ⊤ ⊢ φ) into the composite
        e′;⟨e⊤,eid⟩;⟨efst;e, esnd⟩;eeval and re-checks both inputs and the result.
        Args:
            implicationEvidence (Evidence): Evidence of ⊤ ⊢ φ ⊃ ψ.
            antecedentEvidence (Evidence): Evidence of ⊤ ⊢ φ.
            antecedent (Proposition): φ.
            consequent (Proposition): ψ.
        Returns:
            Tuple[Evidence, CheckResult]: The composite and its check for ⊤ ⊢ ψ.
            A failed precondition is returned as the check result.
        """
        composite = self.compose(
            self.compose(
                self.compose(antecedentEvidence, self.pair(self.eTop, self.eId)),
                self.pair(self.compose(self.eFst, implicationEvidence), self.eSnd),
            ),
            self.eEval,
        )
        implication = self.singletonImp(antecedent, consequent)
        for premise, evidence in ((implication, implicationEvidence), (antecedent, antecedentEvidence)):
            check = self.entails(self.top, evidence, premise)
            if not check.isVerified:
                return composite, check.model_copy(update={"law": LAW_DEDUCTION})
        result = self.entails(self.top, composite, consequent)
        return composite, result.model_copy(update={"law": LAW_DEDUCTION})


class HeytingFrame(EvidencedFrame):
    """
    Φ is the carrier of a Heyting algebra, E = {⋆}, and φ ⊢⋆ ψ iff φ ≤ ψ.
    `uimpRule` replaces the universal implication; it exists to build broken
    frames for the law checker.
    """

    def __init__(
        self,
        algebra: HeytingAlgebra,
        uimpRule: Optional[Callable[[HeytingAlgebra, str, Sequence[str]], str]] = None,
    ):
        super().__init__()
        self.algebra = algebra
        self.name = f"heyting {algebra.name}"
        self._uimpRule = uimpRule

    def _entails(self, phi, evidence, psi) -> CheckResult:
        if evidence == STAR and self.algebra.le(phi, psi):
            return CheckResult.verified(LAW_EVIDENCE, witness={"evidence": STAR})
        return CheckResult.counterexample(LAW_EVIDENCE, witness={"phi": phi, "evidence": str(evidence), "psi": psi})

    def propositionSample(self) -> List[str]:
        return list(self.algebra.elements)

    def evidenceSample(self) -> List[str]:
        return [STAR]

    eId = eTop = eFst = eSnd = eEval = STAR

    def compose(self, first, second):
        return STAR

    def pair(self, first, second):
        return STAR

    def lam(self, evidence):
        return STAR

    @property
    def top(self) -> str:
        return self.algebra.top

    @property
    def bottom(self) -> str:
        return self.algebra.bigMeet(self.algebra.elements)

    def conj(self, left, right):
        return self.algebra.meet(left, right)

    def uimp(self, antecedent, consequents):
        if self._uimpRule is not None:
            return self._uimpRule(self.algebra, antecedent, consequents)
        return self.algebra.imp(antecedent, self.algebra.bigMeet(consequents))


class TableFrame(EvidencedFrame):
    """
    A finite frame given entirely by tables: proposition and evidence ids,
    the relation as the set of (φ, e, ψ) triples that hold, and one table per
    construct and connective. Tables are expected total; `controller.loader`
    checks that before building one.
    """

    def __init__(
        self,
        name: str,
        propositions: Sequence[str],
        evidences: Sequence[str],
        relation: Sequence[Tuple[str, str, str]],
        constructs: Dict[str, str],
        compose: Dict[Tuple[str, str], str],
        pair: Dict[Tuple[str, str], str],
        lam: Dict[str, str],
        top: str,
        conj: Dict[Tuple[str, str], str],
        uimp: Dict[Tuple[str, frozenset], str],
    ):
        super().__init__()
        self.name = name
        self._propositions = list(propositions)
        self._evidences = list(evidences)
        self._relation = frozenset(relation)
        self._constructs = dict(constructs)
        self._compose = dict(compose)
        self._pair = dict(pair)
        self._lam = dict(lam)
        self._top = top
        self._conj = dict(conj)
        self._uimp = dict(uimp)

    def _entails(self, phi, evidence, psi) -> CheckResult:
        if (phi, evidence, psi) in self._relation:
            return CheckResult.verified(LAW_EVIDENCE, witness={"evidence": evidence})
        return CheckResult.counterexample(LAW_EVIDENCE, witness={"phi": phi, "evidence": evidence, "psi": psi})

    def propositionSample(self) -> List[str]:
        return list(self._propositions)

    def evidenceSample(self) -> List[str]:
        return list(self._evidences)

    @property
    def eId(self) -> str:
        return self._constructs["id"]

    @property
    def eTop(self) -> str:
        return self._constructs["top"]

    @property
    def eFst(self) -> str:
        return self._constructs["fst"]

    @property
    def eSnd(self) -> str:
        return self._constructs["snd"]

    @property
    def eEval(self) -> str:
        return self._constructs["eval"]

    def compose(self, first, second):
        return self._compose[(first, second)]

    def pair(self, first, second):
        return self._pair[(first, second)]

    def lam(self, evidence):
        return self._lam[evidence]

    @property
    def top(self) -> str:
        return self._top

    def conj(self, left, right):
        return self._conj[(left, right)]

    def uimp(self, antecedent, consequents):
        return self._uimp[(antecedent, frozenset(consequents))]


def heytingFrame(
    algebra: HeytingAlgebra,
    uimpRule: Optional[Callable[[HeytingAlgebra, str, Sequence[str]], str]] = None,
) -> HeytingFrame:
    """
    Builds the trivial frame of a validated algebra.
    Raises:
        MalformedAlgebraError: If the algebra fails validation.
    """
    result = validateAlgebra(algebra)
    if not result.isVerified:
        raise MalformedAlgebraError(f"{algebra.name} is not a Heyting algebra: {result.law} at {result.witness}")
    return HeytingFrame(algebra, uimpRule)


def _violation(frame: EvidencedFrame, law: str, **instance) -> CheckResult:
    witness = {key: value if isinstance(value, list) else frame.describe(value) for key, value in instance.items()}
    logger.info("frame %s violates %s at %s", frame.name, law, witness)
    return CheckResult.counterexample(law, witness=witness)


def _psiSubsets(propositions: List[Proposition], cap: int) -> List[Tuple[Proposition, ...]]:
    subsets = []
    for size in range(0, min(cap, len(propositions)) + 1):
        subsets.extend(combinations(propositions, size))
    return subsets


def validateFrame(frame: EvidencedFrame, bounds: Optional[Bounds] = None) -> CheckResult:
    """
    Checks the construct rows in order: reflexivity, transitivity, top,
    conjunction, universal implication introduction and evaluation. Premises
    that are not Verified skip the instance; a conclusion that is not Verified
    is reported.
    Args:
        frame (EvidencedFrame): The frame to check.
        bounds (Bounds | None): Ψ-subsets are capped at `bounds.psiCap`; without
            bounds every subset of the proposition sample is used.
    Returns:
        CheckResult: Verified, or the first violation with the row as law.
    """
    propositions = frame.propositionSample()
    evidences = frame.evidenceSample()
    cap = bounds.psiCap if bounds is not None else len(propositions)
    describedBounds = frame.describeBounds(bounds)
    logger.debug("validating frame %s with bounds %s", frame.name, describedBounds)
    pending: List[CheckResult] = []

    def conclude(result: CheckResult, law: str, **instance) -> Optional[CheckResult]:
        if result.isCounterexample:
            return _violation(frame, law, **instance)
        if result.isInconclusive:
            pending.append(result.model_copy(update={"law": law}))
        return None

    def holds(phi, evidence, psi) -> bool:
        return frame.entails(phi, evidence, psi).isVerified

    for phi in propositions:
        failure = conclude(frame.entails(phi, frame.eId, phi), LAW_REFLEXIVITY, phi=phi)
        if failure:
            return failure

    for phi1, phi2 in product(propositions, repeat=2):
        for first in evidences:
            if not holds(phi1, first, phi2):
                continue
            for phi3, second in product(propositions, evidences):
                if not holds(phi2, second, phi3):
                    continue
                composite = frame.compose(first, second)
                failure = conclude(
                    frame.entails(phi1, composite, phi3),
                    LAW_TRANSITIVITY,
                    phi1=phi1, phi2=phi2, phi3=phi3, e1=first, e2=second,
                )
                if failure:
                    return failure

    for phi in propositions:
        failure = conclude(frame.entails(phi, frame.eTop, frame.top), LAW_TOP, phi=phi)
        if failure:
            return failure

    for phi, psi1, psi2 in product(propositions, repeat=3):
        both = frame.conj(psi1, psi2)
        for check, instance in (
            (frame.entails(both, frame.eFst, psi1), {"phi1": psi1, "phi2": psi2, "e": frame.eFst}),
            (frame.entails(both, frame.eSnd, psi2), {"phi1": psi1, "phi2": psi2, "e": frame.eSnd}),
        ):
            failure = conclude(check, LAW_CONJUNCTION, **instance)
            if failure:
                return failure
        for first, second in product(evidences, repeat=2):
            if holds(phi, first, psi1) and holds(phi, second, psi2):
                failure = conclude(
                    frame.entails(phi, frame.pair(first, second), both),
                    LAW_CONJUNCTION,
                    phi=phi, psi1=psi1, psi2=psi2, e1=first, e2=second,
                )
                if failure:
                    return failure

    subsets = _psiSubsets(propositions, cap)
    for phi1, phi2 in product(propositions, repeat=2):
        both = frame.conj(phi1, phi2)
        for family in subsets:
            implication = frame.uimp(phi2, family)
            for evidence in evidences:
                if all(holds(both, evidence, psi) for psi in family):
                    failure = conclude(
                        frame.entails(phi1, frame.lam(evidence), implication),
                        LAW_UIMP_INTRO,
                        phi1=phi1, phi2=phi2, psis=list(map(frame.describe, family)), e=evidence,
                    )
                    if failure:
                        return failure

    for phi in propositions:
        for family in subsets:
            applied = frame.conj(frame.uimp(phi, family), phi)
            for psi in family:
                failure = conclude(
                    frame.entails(applied, frame.eEval, psi),
                    LAW_UIMP_EVAL,
                    phi=phi, psis=list(map(frame.describe, family)), psi=psi,
                )
                if failure:
                    return failure

    if pending:
        logger.info("frame %s inconclusive at %s", frame.name, pending[0].law)
        return pending[0].model_copy(update={"bounds": describedBounds})
    return CheckResult.verified(
        LAW_UIMP_EVAL,
        witness={
            "frame": frame.name,
            "eId": frame.describe(frame.eId),
            "eTop": frame.describe(frame.eTop),
            "eFst": frame.describe(frame.eFst),
            "eSnd": frame.describe(frame.eSnd),
            "eEval": frame.describe(frame.eEval),
        },
        bounds=describedBounds,
    )
