"""
This module provides monadic combinatory algebras over the term codes:
expressions and their evaluation, propositions, monadic cores with their
modality, the induced evidence relation and the induced evidenced frame.
The partiality tier lives here; the continuation tier is in `controller.machine`.
Classes:
    Code, EVar, Bullet:
        Expressions.
    Empty, One, Unknown:
        Monadic values of the partiality tier.
    Always, Never, Table, EqualsTerm, ReducesTo, And, Imp, Coprod, MemberOf, TopologyApplied:
        Propositions, i.e. maps from codes to truth values.
    MonadicCore(ABC):
        Truth values, modality, separator and memoized proposition evaluation
        over the code universe of the bounds.
    PartialCore(MonadicCore):
        The partiality tier: at most one result per application.
    InducedFrame(EvidencedFrame):
        The evidenced frame of a monadic core.
Functions:
    checkEvidence(core, evidence, phi, psi) -> CheckResult
    checkAfterReturn(core, propositions) -> CheckResult
    bigPi(family) -> Imp
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from controller.checkconstants import ENUMERATION_CEILING, LAW_AFTER_RETURN, LAW_EVIDENCE
from controller.errors import OpenTermError, ScaleGuardError, TierMismatchError, UnknownNameError
from controller.frame import EvidencedFrame
from controller.heyting import HeytingAlgebra
from controller.term import (
    FST,
    IDENTITY,
    K,
    P,
    S,
    SND,
    App,
    Atom,
    Cont,
    Term,
    Var,
    abstract,
    app,
    atomsOf,
    describeUniverse,
    isClosed,
    isStuckProjection,
    normalize,
    printTerm,
)
from objects.bounds import Bounds
from objects.result import CheckResult

logger = logging.getLogger(__name__)

SEPARATOR_ATOMS = frozenset([S, K, P, FST, SND])


class Undetermined:
    """
    Truth value of a judgment whose computation ran out of budget.
    """

    def __repr__(self):
        return "?"

    def __str__(self):
        return "?"


UNDETERMINED = Undetermined()


# expressions


@dataclass(frozen=True)
class Code:
    term: Term


@dataclass(frozen=True)
class EVar:
    name: str


@dataclass(frozen=True)
class Bullet:
    left: "Expression"
    right: "Expression"


Expression = Union[Code, EVar, Bullet]


def isClosedExpression(expression: Expression) -> bool:
    if isinstance(expression, EVar):
        return False
    if isinstance(expression, Bullet):
        return isClosedExpression(expression.left) and isClosedExpression(expression.right)
    return isClosed(expression.term)


def printExpression(expression: Expression) -> str:
    if isinstance(expression, Code):
        return printTerm(expression.term)
    if isinstance(expression, EVar):
        return expression.name
    return f"({printExpression(expression.left)} • {printExpression(expression.right)})"


# monadic values of the partiality tier


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class One:
    term: Term


@dataclass(frozen=True)
class Unknown:
    budget: int


# propositions


@dataclass(frozen=True)
class Always:
    pass


@dataclass(frozen=True)
class Never:
    pass


@dataclass(frozen=True)
class Table:
    entries: Tuple[Tuple[Term, str], ...]
    default: str

    @classmethod
    def fromMapping(cls, mapping: Mapping[Term, str], default: str) -> "Table":
        return cls(entries=tuple(mapping.items()), default=default)

    def lookup(self, code: Term) -> str:
        for term, value in self.entries:
            if term == code:
                return value
        return self.default


@dataclass(frozen=True)
class EqualsTerm:
    term: Term


@dataclass(frozen=True)
class ReducesTo:
    """
    Holds at a code when the code and `term` have the same normal form within
    `budget` steps each, and is undetermined when either runs out.
    """

    term: Term
    budget: int


@dataclass(frozen=True)
class And:
    left: "Proposition"
    right: "Proposition"


@dataclass(frozen=True)
class Imp:
    antecedent: "Proposition"
    consequents: Tuple["Proposition", ...]


@dataclass(frozen=True)
class Coprod:
    members: Tuple["Proposition", ...]


@dataclass(frozen=True)
class MemberOf:
    """
    Holds exactly at the listed codes. With `undetermined` set, the proposition
    is undetermined rather than false outside them.
    """

    terms: frozenset
    undetermined: bool = False


@dataclass(frozen=True)
class TopologyApplied:
    topology: str
    body: "Proposition"


Proposition = Union[Always, Never, Table, EqualsTerm, ReducesTo, And, Imp, Coprod, MemberOf, TopologyApplied]


def bigPi(family: Sequence[Proposition]) -> Imp:
    return Imp(Always(), tuple(family))


def negation(body: Proposition) -> Imp:
    return Imp(body, (Never(),))


def tag(index: int) -> Term:
    """
    Tag of the index-th summand of a coproduct: K, K K, K (K K), ...
    """
    result = K
    for _ in range(index):
        result = App(K, result)
    return result


def describeProposition(prop: Any) -> str:
    if isinstance(prop, Always):
        return "Always"
    if isinstance(prop, Never):
        return "Never"
    if isinstance(prop, Table):
        entries = ", ".join(f"{printTerm(term)}: {value}" for term, value in prop.entries)
        return f"Table{{{entries}; default {prop.default}}}"
    if isinstance(prop, EqualsTerm):
        return f"={printTerm(prop.term)}"
    if isinstance(prop, ReducesTo):
        return f"⇓{printTerm(prop.term)}@{prop.budget}"
    if isinstance(prop, And):
        return f"({describeProposition(prop.left)} ∧ {describeProposition(prop.right)})"
    if isinstance(prop, Imp):
        consequents = ", ".join(describeProposition(item) for item in prop.consequents)
        return f"({describeProposition(prop.antecedent)} ⊃ {{{consequents}}})"
    if isinstance(prop, Coprod):
        return "∐{" + ", ".join(describeProposition(item) for item in prop.members) + "}"
    if isinstance(prop, MemberOf):
        members = ", ".join(sorted(printTerm(term) for term in prop.terms))
        return f"∈{{{members}}}" + ("?" if prop.undetermined else "")
    if isinstance(prop, TopologyApplied):
        return f"{prop.topology}({describeProposition(prop.body)})"
    if isinstance(prop, (Atom, App, Cont, Var)):
        return printTerm(prop)
    return str(prop)


class MonadicCore(ABC):
    """
    A monadic core over the code universe of `bounds`. Truth values come from
    `omega`, lifted with `UNDETERMINED` for judgments whose computations ran out
    of fuel: meet with bottom is bottom, join with top is top, and an
    implication from bottom or into top is top.

    Codes are normal forms. A conjunction only holds at pairs, so quantifiers
    whose antecedent is a conjunction range over the pairs `P a b` of codes as
    well as over the codes themselves.
    """

    tier: str = "abstract"

    def __init__(self, omega: HeytingAlgebra, bounds: Bounds):
        self.omega = omega
        self.bounds = bounds
        self.summary = describeUniverse(bounds.basis, bounds.maxLeaves, bounds.fuel)
        self.universe: List[Term] = list(self.summary.codes)
        self.steps = 0
        self._holds: Dict[Tuple[Proposition, Term], Any] = {}
        self._pairs: Optional[List[Term]] = None

    def __repr__(self):
        return f"{type(self).__name__}({self.omega.name}, {self.bounds.key()})"

    @property
    def pairs(self) -> List[Term]:
        """
        The universe followed by every pair of universe codes that is not
        already in it.
        Raises:
            ScaleGuardError: If there would be more pairs than the enumeration
                ceiling.
        """
        if self._pairs is None:
            total = len(self.universe) ** 2
            if total > ENUMERATION_CEILING:
                raise ScaleGuardError(f"{total} pairs of codes exceed the ceiling {ENUMERATION_CEILING}")
            codes = dict.fromkeys(self.universe)
            for first in self.universe:
                for second in self.universe:
                    codes.setdefault(app(P, first, second), None)
            self._pairs = list(codes)
        return self._pairs

    def codesFor(self, antecedent: Proposition) -> List[Term]:
        """
        The codes a quantifier with this antecedent ranges over.
        """
        return self.pairs if isinstance(antecedent, And) else self.universe

    def describeBounds(self, antecedent: Optional[Proposition] = None) -> Dict[str, Any]:
        described = {**self.bounds.describe(), **self.summary.describe(), "tier": self.tier, "universe": len(self.universe)}
        if antecedent is not None and isinstance(antecedent, And):
            described["pairs"] = len(self.pairs)
        return described

    # lifted truth values

    def meet(self, a, b):
        if a is UNDETERMINED or b is UNDETERMINED:
            return self.omega.bottom if self.omega.bottom in (a, b) else UNDETERMINED
        return self.omega.meet(a, b)

    def join(self, a, b):
        if a is UNDETERMINED or b is UNDETERMINED:
            return self.omega.top if self.omega.top in (a, b) else UNDETERMINED
        return self.omega.join(a, b)

    def imp(self, a, b):
        if a == self.omega.bottom or b == self.omega.top:
            return self.omega.top
        if a is UNDETERMINED or b is UNDETERMINED:
            return UNDETERMINED
        return self.omega.imp(a, b)

    def le(self, a, b) -> Optional[bool]:
        if a == self.omega.bottom or b == self.omega.top:
            return True
        if a is UNDETERMINED or b is UNDETERMINED:
            return None
        return self.omega.le(a, b)

    # tier specific

    @abstractmethod
    def unit(self, code: Term) -> Any: ...

    @abstractmethod
    def apply(self, code: Term, argument: Term) -> Any: ...

    @abstractmethod
    def modality(self, value: Any, prop: Proposition) -> Any: ...

    @abstractmethod
    def evaluate(self, expression: Expression) -> Any: ...

    def inSeparator(self, term: Term) -> bool:
        return isClosed(term) and atomsOf(term) <= SEPARATOR_ATOMS and not _hasCont(term)

    # propositions

    def holds(self, prop: Proposition, code: Term):
        """
        Evaluates a proposition at a code, memoized per (proposition, code).
        """
        key = (prop, code)
        if key not in self._holds:
            self._holds[key] = self._evaluateProposition(prop, code)
        return self._holds[key]

    def _evaluateProposition(self, prop: Proposition, code: Term):
        top, bottom = self.omega.top, self.omega.bottom
        if isinstance(prop, Always):
            return top
        if isinstance(prop, Never):
            return bottom
        if isinstance(prop, Table):
            return self.omega.check(prop.lookup(code))
        if isinstance(prop, EqualsTerm):
            return top if code == prop.term else bottom
        if isinstance(prop, ReducesTo):
            if not isClosed(code) or _hasCont(code):
                return top if code == prop.term else bottom
            own = normalize(code, prop.budget)
            target = normalize(prop.term, prop.budget)
            if not (own.isValue and target.isValue):
                return UNDETERMINED
            return top if own.value == target.value else bottom
        if isinstance(prop, And):
            return self.meet(
                self.modality(self.apply(FST, code), prop.left),
                self.modality(self.apply(SND, code), prop.right),
            )
        if isinstance(prop, Imp):
            return self._implication(prop, code)
        if isinstance(prop, Coprod):
            result = bottom
            first = self.apply(FST, code)
            second = self.apply(SND, code)
            for index, member in enumerate(prop.members):
                summand = self.meet(self.modality(first, EqualsTerm(tag(index))), self.modality(second, member))
                result = self.join(result, summand)
                if result == top:
                    return top
            return result
        if isinstance(prop, MemberOf):
            if code in prop.terms:
                return top
            return UNDETERMINED if prop.undetermined else bottom
        if isinstance(prop, TopologyApplied):
            if prop.topology == "id":
                return self.holds(prop.body, code)
            if prop.topology == "dnn":
                return self.holds(negation(negation(prop.body)), code)
            raise UnknownNameError(f"unknown topology {prop.topology!r}")
        raise TypeError(f"not a proposition: {prop!r}")

    def _implication(self, prop: Imp, code: Term):
        result = self.omega.top
        for argument in self.codesFor(prop.antecedent):
            premise = self.holds(prop.antecedent, argument)
            if premise == self.omega.bottom:
                continue
            value = self.apply(code, argument)
            for consequent in prop.consequents:
                result = self.meet(result, self.imp(premise, self.modality(value, consequent)))
                if result == self.omega.bottom:
                    return result
        return result

    def sameOverUniverse(self, left: Proposition, right: Proposition) -> bool:
        return all(self.holds(left, code) == self.holds(right, code) for code in self.universe)


def _hasCont(term: Term) -> bool:
    if isinstance(term, Cont):
        return True
    if isinstance(term, App):
        return _hasCont(term.left) or _hasCont(term.right)
    return False


class PartialCore(MonadicCore):
    """
    Partiality tier. Application normalizes `code argument` with the fuel of
    the bounds: a normal form is One, one stuck on a projection of a non-pair
    is Empty, and an exhausted budget is Unknown.
    """

    tier = "partial"

    def __init__(self, omega: HeytingAlgebra, bounds: Bounds):
        super().__init__(omega, bounds)
        self._applications: Dict[Tuple[Term, Term], Any] = {}

    def unit(self, code: Term) -> One:
        return One(code)

    def _run(self, term: Term):
        outcome = normalize(term, self.bounds.fuel)
        self.steps += outcome.steps
        if not outcome.isValue:
            return Unknown(self.bounds.fuel)
        if isStuckProjection(outcome.value):
            return Empty()
        return One(outcome.value)

    def apply(self, code: Term, argument: Term):
        key = (code, argument)
        if key not in self._applications:
            self._applications[key] = self._run(App(code, argument))
        return self._applications[key]

    def evaluate(self, expression: Expression):
        """
        Code c evaluates to One(c); a Bullet evaluates the left then the right
        operand and applies the two results.
        Raises:
            OpenTermError: If the expression contains a variable.
        """
        if not isClosedExpression(expression):
            raise OpenTermError(f"cannot evaluate open expression {printExpression(expression)}")
        if isinstance(expression, Code):
            return self.unit(expression.term)
        left = self.evaluate(expression.left)
        if not isinstance(left, One):
            return left
        right = self.evaluate(expression.right)
        if not isinstance(right, One):
            return right
        return self.apply(left.term, right.term)

    def modality(self, value, prop: Proposition):
        if isinstance(value, One):
            return self.holds(prop, value.term)
        if isinstance(value, Empty):
            return self.omega.bottom
        if isinstance(value, Unknown):
            return UNDETERMINED
        raise TierMismatchError(f"{type(value).__name__} is not a value of the partial tier")


def checkEvidence(core: MonadicCore, evidence: Term, phi: Proposition, psi: Proposition) -> CheckResult:
    """
    Decides φ ⊢e ψ over the code universe: φ(c) ≤ ◇⟨r ∈ e·c⟩ψ(r) for every c,
    with c also ranging over pairs of codes when φ is a conjunction.
    Args:
        core (MonadicCore): The tier.
        evidence (Term): The evidence e.
        phi (Proposition): Antecedent.
        psi (Proposition): Consequent.
    Returns:
        CheckResult: Counterexample at the first code in enumeration order whose
        inequality fails, else Inconclusive if some judgment ran out of fuel,
        else Verified.
    """
    bounds = core.describeBounds(phi)
    if not core.inSeparator(evidence):
        logger.warning("evidence %s is outside the separator of the %s tier", printTerm(evidence), core.tier)
    startSteps = core.steps
    pending = None
    for code in core.codesFor(phi):
        lhs = core.holds(phi, code)
        if lhs == core.omega.bottom:
            continue
        rhs = core.modality(core.apply(evidence, code), psi)
        verdict = core.le(lhs, rhs)
        if verdict is False:
            return CheckResult.counterexample(
                LAW_EVIDENCE,
                witness={
                    "code": printTerm(code),
                    "evidence": printTerm(evidence),
                    "phi": describeProposition(phi),
                    "psi": describeProposition(psi),
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                },
                bounds=bounds,
                steps=core.steps - startSteps,
            )
        if verdict is None and pending is None:
            pending = code
    if pending is not None:
        return CheckResult.inconclusive(
            LAW_EVIDENCE,
            witness={"code": printTerm(pending), "evidence": printTerm(evidence), "budget": core.bounds.fuel},
            bounds=bounds,
            steps=core.steps - startSteps,
        )
    return CheckResult.verified(
        LAW_EVIDENCE, witness={"evidence": printTerm(evidence)}, bounds=bounds, steps=core.steps - startSteps
    )


def checkAfterReturn(core: MonadicCore, propositions: Sequence[Proposition]) -> CheckResult:
    """
    Checks φ(a) ≤ ◇⟨x ∈ unit(a)⟩φ(x) for every code a and every given φ.
    """
    for prop in propositions:
        for code in core.universe:
            lhs = core.holds(prop, code)
            rhs = core.modality(core.unit(code), prop)
            verdict = core.le(lhs, rhs)
            if verdict is False:
                return CheckResult.counterexample(
                    LAW_AFTER_RETURN,
                    witness={"code": printTerm(code), "phi": describeProposition(prop), "lhs": str(lhs), "rhs": str(rhs)},
                )
            if verdict is None:
                return CheckResult.inconclusive(
                    LAW_AFTER_RETURN, witness={"code": printTerm(code), "phi": describeProposition(prop)}
                )
    return CheckResult.verified(LAW_AFTER_RETURN, witness={"tier": core.tier}, bounds=core.describeBounds())


EVAL = abstract("x", App(App(FST, Var("x")), App(SND, Var("x"))))

DEFAULT_PROPOSITIONS: Tuple[Proposition, ...] = (Always(), Never(), EqualsTerm(K), EqualsTerm(S))
DEFAULT_EVIDENCES: Tuple[Term, ...] = (IDENTITY, K, FST, SND, App(K, K), App(K, S))


class InducedFrame(EvidencedFrame):
    """
    The evidenced frame of a monadic core: propositions are maps from codes to
    truth values, evidences are separator terms and the relation is
    `checkEvidence`. Constructs are bracket abstractions over P, FST and SND.
    """

    def __init__(
        self,
        core: MonadicCore,
        propositions: Optional[Sequence[Proposition]] = None,
        evidences: Optional[Sequence[Term]] = None,
    ):
        super().__init__()
        self.core = core
        self.name = f"induced {core.tier}"
        self._propositions = list(propositions or DEFAULT_PROPOSITIONS)
        self._evidences = list(evidences or DEFAULT_EVIDENCES)

    def _entails(self, phi, evidence, psi) -> CheckResult:
        return checkEvidence(self.core, evidence, phi, psi)

    def propositionSample(self) -> List[Proposition]:
        return list(self._propositions)

    def evidenceSample(self) -> List[Term]:
        return list(self._evidences)

    def evidenceCandidates(self) -> List[Term]:
        candidates = list(self._evidences)
        candidates.extend(term for term in self.core.universe if self.core.inSeparator(term) and term not in candidates)
        return candidates

    def describe(self, item) -> str:
        return describeProposition(item)

    def describeBounds(self, bounds: Optional[Bounds]) -> Dict[str, Any]:
        described = self.core.describeBounds(And(Always(), Always()))
        if bounds is not None:
            described.update(bounds.describe())
        return described

    eId = IDENTITY
    eTop = K
    eFst = FST
    eSnd = SND
    eEval = EVAL

    def compose(self, first: Term, second: Term) -> Term:
        return abstract("x", App(second, App(first, Var("x"))))

    def pair(self, first: Term, second: Term) -> Term:
        return abstract("x", app(P, App(first, Var("x")), App(second, Var("x"))))

    def lam(self, evidence: Term) -> Term:
        return abstract("x", abstract("y", App(evidence, app(P, Var("x"), Var("y")))))

    @property
    def top(self) -> Proposition:
        return Always()

    @property
    def bottom(self) -> Proposition:
        return Never()

    def conj(self, left, right) -> Proposition:
        return And(left, right)

    def uimp(self, antecedent, consequents) -> Proposition:
        return Imp(antecedent, tuple(consequents))

    def bigCoprod(self, family) -> Proposition:
        return Coprod(tuple(family))


def inducedFrame(core: MonadicCore, **samples) -> InducedFrame:
    return InducedFrame(core, **samples)
