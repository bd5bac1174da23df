"""
This module builds the topos of an evidenced frame: objects with equality
predicates, functional predicates, composition and identities, finite
products, equalizers, the terminal object, the subobject classifier with its
canonical subobjects, and the characteristic transform of the partiality tier.
Classes:
    EftObject:
        A carrier with an equality predicate into the frame's propositions.
    FunctionalPredicate (alias Morphism):
        A relation between carriers; morphisms are its classes under `checkEq`.
Functions:
    validateObject, validateFpred, checkEq, compose, identity, liftFunction,
    product, pairing, equalizer, terminal, terminalMorphism, classifierObject,
    true, classify, classifyingMorphism, canonicalSubobject, isMono,
    subobjectIso, enumerateObjects, enumerateFunctionalPredicates,
    characteristicTransform, checkEtOrder, checkChOrder, checkNaturality,
    characteristicRoundTrip.
Functions that enumerate candidates only work over `HeytingFrame`s.
"""

import logging
from functools import lru_cache, reduce as fold
from itertools import product as cartesian
from math import prod
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from controller.checkconstants import (
    ENUMERATION_CEILING,
    LAW_CLASSIFIER,
    LAW_EQ,
    LAW_ET_ORDER,
    LAW_EXT,
    LAW_FEXT,
    LAW_MONO,
    LAW_NATURALITY,
    LAW_SV,
    LAW_SYM,
    LAW_TOT,
    LAW_TRS,
)
from controller.errors import FrameMismatchError, NotMonicError, ScaleGuardError
from controller.frame import EvidencedFrame, HeytingFrame
from controller.heyting import HeytingAlgebra
from controller.mca import (
    UNDETERMINED,
    Code,
    Expression,
    MemberOf,
    MonadicCore,
    One,
    Proposition,
    Unknown,
    checkEvidence,
    describeProposition,
    printExpression,
)
from controller.term import Term, printTerm
from objects.result import CheckResult

logger = logging.getLogger(__name__)

Element = Hashable


class EftObject:
    """
    An object (X, ∼). Pairs missing from `eq` are the frame's bottom.
    """

    def __init__(self, frame: EvidencedFrame, carrier: Sequence[Element], eq: Mapping[Tuple[Element, Element], Any], name: str = ""):
        self.frame = frame
        self.carrier = tuple(carrier)
        self.table = dict(eq)
        self.name = name or "object"
        self._bottom = frame.bottom

    def rel(self, x: Element, y: Element):
        return self.table.get((x, y), self._bottom)

    def ex(self, x: Element):
        return self.rel(x, x)

    def key(self) -> tuple:
        return (self.carrier, tuple(self.rel(x, y) for x, y in cartesian(self.carrier, repeat=2)))

    def describeTable(self) -> Dict[str, str]:
        return {f"{x}~{y}": self.frame.describe(self.rel(x, y)) for x, y in cartesian(self.carrier, repeat=2)}

    def __repr__(self):
        return f"EftObject({self.name}, {self.carrier})"


class FunctionalPredicate:
    """
    A relation F: X × Y → Φ between the carriers of two objects. `function`
    records a representing function when the predicate is a lifting.
    """

    def __init__(
        self,
        source: EftObject,
        target: EftObject,
        table: Mapping[Tuple[Element, Element], Any],
        function: Optional[Mapping[Element, Element]] = None,
    ):
        if source.frame is not target.frame:
            raise FrameMismatchError("source and target live over different frames")
        self.source = source
        self.target = target
        self.frame = source.frame
        self.table = dict(table)
        self.function = dict(function) if function is not None else None

    def at(self, x: Element, y: Element):
        return self.table.get((x, y), self.frame.bottom)

    def key(self) -> tuple:
        return tuple(self.at(x, y) for x, y in cartesian(self.source.carrier, self.target.carrier))

    def describeTable(self) -> Dict[str, str]:
        return {
            f"{x}->{y}": self.frame.describe(self.at(x, y))
            for x, y in cartesian(self.source.carrier, self.target.carrier)
        }


Morphism = FunctionalPredicate


def conjAll(frame: EvidencedFrame, *props):
    return fold(frame.conj, props)


def checkPi(frame: EvidencedFrame, law: str, instances: Sequence[Tuple[Dict[str, Any], Any]]) -> CheckResult:
    """
    Checks that the Π of the instance propositions is evidenceable. On failure
    the first instance that is not evidenceable on its own is reported.
    Args:
        frame (EvidencedFrame): The frame.
        law (str): Law name for the result.
        instances (Sequence[Tuple[dict, Proposition]]): Labelled conjuncts.
    Returns:
        CheckResult: Verified with the evidence found, or the failure.
    """
    result = frame.evidenceable(frame.bigPi([prop for _, prop in instances]), law)
    if not result.isCounterexample:
        return result
    for label, prop in instances:
        if not frame.evidenceable(prop, law).isVerified:
            witness = {key: str(value) for key, value in label.items()}
            witness["proposition"] = frame.describe(prop)
            logger.info("%s fails at %s", law, witness)
            return CheckResult.counterexample(law, witness=witness)
    return result


def _checkAll(results: Iterable[Tuple[str, Callable[[], CheckResult]]], law: str) -> CheckResult:
    witness = {}
    for name, check in results:
        result = check()
        if not result.isVerified:
            return result
        witness[name] = result.witness.get("evidence", "")
    return CheckResult.verified(law, witness=witness)


def symFormula(obj: EftObject) -> List[Tuple[dict, Any]]:
    frame = obj.frame
    return [
        ({"x": x, "y": y}, frame.singletonImp(obj.rel(x, y), obj.rel(y, x)))
        for x, y in cartesian(obj.carrier, repeat=2)
    ]


def trsFormula(obj: EftObject) -> List[Tuple[dict, Any]]:
    frame = obj.frame
    return [
        ({"x": x, "y": y, "z": z}, frame.singletonImp(frame.conj(obj.rel(x, y), obj.rel(y, z)), obj.rel(x, z)))
        for x, y, z in cartesian(obj.carrier, repeat=3)
    ]


def validateObject(obj: EftObject) -> CheckResult:
    """
    Checks that sym and trs are evidenceable. Transitivity uses the target
    x∼z.
    Returns:
        CheckResult: Verified with the sym and trs evidences as witness.
    """
    logger.debug("validating object %s", obj.name)
    frame = obj.frame
    return _checkAll(
        [
            ("sym", lambda: checkPi(frame, LAW_SYM, symFormula(obj))),
            ("trs", lambda: checkPi(frame, LAW_TRS, trsFormula(obj))),
        ],
        LAW_TRS,
    )


def extFormula(fpred: FunctionalPredicate) -> List[Tuple[dict, Any]]:
    frame, source, target = fpred.frame, fpred.source, fpred.target
    return [
        (
            {"x": x, "x'": x2, "y": y, "y'": y2},
            frame.singletonImp(conjAll(frame, source.rel(x, x2), target.rel(y, y2), fpred.at(x, y)), fpred.at(x2, y2)),
        )
        for x, x2 in cartesian(source.carrier, repeat=2)
        for y, y2 in cartesian(target.carrier, repeat=2)
    ]


def svFormula(fpred: FunctionalPredicate) -> List[Tuple[dict, Any]]:
    frame, source, target = fpred.frame, fpred.source, fpred.target
    return [
        (
            {"x": x, "y": y, "y'": y2},
            frame.singletonImp(
                conjAll(frame, source.ex(x), target.ex(y), target.ex(y2), fpred.at(x, y), fpred.at(x, y2)),
                target.rel(y, y2),
            ),
        )
        for x in source.carrier
        for y, y2 in cartesian(target.carrier, repeat=2)
    ]


def totFormula(fpred: FunctionalPredicate) -> List[Tuple[dict, Any]]:
    frame, source, target = fpred.frame, fpred.source, fpred.target
    return [
        (
            {"x": x},
            frame.singletonImp(
                source.ex(x), frame.bigCoprod([frame.conj(target.ex(y), fpred.at(x, y)) for y in target.carrier])
            ),
        )
        for x in source.carrier
    ]


def validateFpred(fpred: FunctionalPredicate) -> CheckResult:
    """
    Checks that ext, sv and tot are evidenceable.
    """
    frame = fpred.frame
    return _checkAll(
        [
            ("ext", lambda: checkPi(frame, LAW_EXT, extFormula(fpred))),
            ("sv", lambda: checkPi(frame, LAW_SV, svFormula(fpred))),
            ("tot", lambda: checkPi(frame, LAW_TOT, totFormula(fpred))),
        ],
        LAW_TOT,
    )


def checkEq(first: FunctionalPredicate, second: FunctionalPredicate) -> CheckResult:
    """
    Checks eq(F, G) = Π_{x,y}(ex(x, y) ⊃ (F(x, y) ⇔ G(x, y))).
    """
    frame, source, target = first.frame, first.source, first.target
    instances = [
        (
            {"x": x, "y": y},
            frame.singletonImp(frame.conj(source.ex(x), target.ex(y)), frame.iff(first.at(x, y), second.at(x, y))),
        )
        for x, y in cartesian(source.carrier, target.carrier)
    ]
    return checkPi(frame, LAW_EQ, instances)


def compose(second: FunctionalPredicate, first: FunctionalPredicate) -> FunctionalPredicate:
    """
    G ∘ F with (G ∘ F)(x, z) = ∐_y (ex(y) ∧ F(x, y) ∧ G(y, z)).
    Raises:
        FrameMismatchError: If the target of F is not the source of G.
    """
    if first.target.key() != second.source.key() or first.frame is not second.frame:
        raise FrameMismatchError("the target of the first predicate is not the source of the second")
    frame, middle = first.frame, first.target
    table = {
        (x, z): frame.bigCoprod([conjAll(frame, middle.ex(y), first.at(x, y), second.at(y, z)) for y in middle.carrier])
        for x, z in cartesian(first.source.carrier, second.target.carrier)
    }
    function = None
    if first.function is not None and second.function is not None:
        function = {x: second.function[first.function[x]] for x in first.source.carrier}
    return FunctionalPredicate(first.source, second.target, table, function)


def fextFormula(function: Mapping[Element, Element], source: EftObject, target: EftObject) -> List[Tuple[dict, Any]]:
    frame = source.frame
    return [
        ({"x": x, "x'": x2}, frame.singletonImp(source.rel(x, x2), target.rel(function[x], function[x2])))
        for x, x2 in cartesian(source.carrier, repeat=2)
    ]


def liftFunction(
    function: Mapping[Element, Element], source: EftObject, target: EftObject
) -> Tuple[Optional[FunctionalPredicate], CheckResult]:
    """
    Lifts a function of carriers to lift(f)(x, y) = f(x) ∼ y after checking
    fext(f) = Π_{x,x′}(x ∼ x′ ⊃ f(x) ∼ f(x′)).
    Returns:
        Tuple[FunctionalPredicate | None, CheckResult]: The lifting, or None
        with the fext counterexample.
    """
    result = checkPi(source.frame, LAW_FEXT, fextFormula(function, source, target))
    if not result.isVerified:
        return None, result
    table = {(x, y): target.rel(function[x], y) for x, y in cartesian(source.carrier, target.carrier)}
    return FunctionalPredicate(source, target, table, function), result


def identity(obj: EftObject) -> FunctionalPredicate:
    table = {(x, y): obj.rel(x, y) for x, y in cartesian(obj.carrier, repeat=2)}
    return FunctionalPredicate(obj, obj, table, {x: x for x in obj.carrier})


def terminal(frame: EvidencedFrame) -> EftObject:
    return EftObject(frame, ("*",), {("*", "*"): frame.top}, name="1")


def terminalMorphism(obj: EftObject, one: Optional[EftObject] = None) -> FunctionalPredicate:
    one = one or terminal(obj.frame)
    return FunctionalPredicate(obj, one, {(x, "*"): obj.frame.top for x in obj.carrier}, {x: "*" for x in obj.carrier})


def _requireSameFrame(*objects: EftObject):
    frames = {id(obj.frame) for obj in objects}
    if len(frames) > 1:
        raise FrameMismatchError("objects live over different frames")


def product(left: EftObject, right: EftObject) -> Tuple[EftObject, FunctionalPredicate, FunctionalPredicate]:
    """
    The product (X × Y, ∼) with (x, y) ∼ (x′, y′) = x ∼ x′ ∧ y ∼ y′ and its two
    projections.
    Raises:
        FrameMismatchError: If the objects live over different frames.
    """
    _requireSameFrame(left, right)
    frame = left.frame
    carrier = list(cartesian(left.carrier, right.carrier))
    eq = {(p, q): frame.conj(left.rel(p[0], q[0]), right.rel(p[1], q[1])) for p, q in cartesian(carrier, repeat=2)}
    obj = EftObject(frame, carrier, eq, name=f"{left.name}×{right.name}")
    first = FunctionalPredicate(obj, left, {(p, x): left.rel(p[0], x) for p, x in cartesian(carrier, left.carrier)}, {p: p[0] for p in carrier})
    second = FunctionalPredicate(obj, right, {(p, y): right.rel(p[1], y) for p, y in cartesian(carrier, right.carrier)}, {p: p[1] for p in carrier})
    return obj, first, second


def pairing(first: FunctionalPredicate, second: FunctionalPredicate, target: EftObject) -> FunctionalPredicate:
    """
    ⟨F, G⟩(w, (x, y)) = F(w, x) ∧ G(w, y) into the product object `target`.
    """
    frame = first.frame
    table = {(w, p): frame.conj(first.at(w, p[0]), second.at(w, p[1])) for w, p in cartesian(first.source.carrier, target.carrier)}
    function = None
    if first.function is not None and second.function is not None:
        function = {w: (first.function[w], second.function[w]) for w in first.source.carrier}
    return FunctionalPredicate(first.source, target, table, function)


def equalizer(first: FunctionalPredicate, second: FunctionalPredicate) -> Tuple[EftObject, FunctionalPredicate]:
    """
    The equalizer (X, ≈) with x ≈ x′ = x ∼ x′ ∧ ∐_y (F(x, y) ∧ G(x, y)) and its
    inclusion, represented by the identity of X.
    """
    frame, source, target = first.frame, first.source, first.target
    agreement = {x: frame.bigCoprod([frame.conj(first.at(x, y), second.at(x, y)) for y in target.carrier]) for x in source.carrier}
    eq = {(x, x2): frame.conj(source.rel(x, x2), agreement[x]) for x, x2 in cartesian(source.carrier, repeat=2)}
    obj = EftObject(frame, source.carrier, eq, name=f"eq({source.name})")
    inclusion = FunctionalPredicate(obj, source, {(x, y): source.rel(x, y) for x, y in cartesian(source.carrier, repeat=2)}, {x: x for x in source.carrier})
    return obj, inclusion


def classifierObject(frame: EvidencedFrame) -> EftObject:
    """
    (Φ, ⇔) over the proposition sample of the frame.
    """
    propositions = frame.propositionSample()
    eq = {(p, q): frame.iff(p, q) for p, q in cartesian(propositions, repeat=2)}
    return EftObject(frame, propositions, eq, name="Ω")


def true(frame: EvidencedFrame, omega: Optional[EftObject] = None) -> FunctionalPredicate:
    """
    true: 1 → (Φ, ⇔), the lifting of * ↦ ⊤ with true(*, φ) = ⊤ ⇔ φ.
    """
    omega = omega or classifierObject(frame)
    one = terminal(frame)
    return FunctionalPredicate(one, omega, {("*", p): frame.iff(frame.top, p) for p in omega.carrier}, {"*": frame.top})


def monoFormula(mono: FunctionalPredicate) -> List[Tuple[dict, Any]]:
    frame, source = mono.frame, mono.source
    return [
        (
            {"s": s, "s'": s2, "x": x},
            frame.singletonImp(
                conjAll(frame, source.ex(s), source.ex(s2), mono.at(s, x), mono.at(s2, x)), source.rel(s, s2)
            ),
        )
        for s, s2 in cartesian(source.carrier, repeat=2)
        for x in mono.target.carrier
    ]


def isMono(mono: FunctionalPredicate) -> CheckResult:
    """
    Checks Π(ex(s, s′) ∧ M(s, x) ∧ M(s′, x) ⊃ s ∼ s′).
    """
    return checkPi(mono.frame, LAW_MONO, monoFormula(mono))


def classify(mono: FunctionalPredicate) -> Dict[Element, Any]:
    """
    χ_m(x) = ∐_s (ex(s) ∧ M(s, x)).
    Raises:
        NotMonicError: If the predicate is not monic.
    """
    result = isMono(mono)
    if not result.isVerified:
        raise NotMonicError(f"predicate is not monic: {result.witness}")
    frame, source = mono.frame, mono.source
    return {
        x: frame.bigCoprod([frame.conj(source.ex(s), mono.at(s, x)) for s in source.carrier]) for x in mono.target.carrier
    }


def classifyingMorphism(mono: FunctionalPredicate, omega: Optional[EftObject] = None) -> FunctionalPredicate:
    """
    The morphism X → (Φ, ⇔) lifting χ_m. Only for finite frames, whose
    proposition sample is all of Φ.
    """
    chi = classify(mono)
    omega = omega or classifierObject(mono.frame)
    lifted, result = liftFunction(chi, mono.target, omega)
    if lifted is None:
        raise NotMonicError(f"classifying map is not extensional: {result.witness}")
    return lifted


def checkPredicateExtensional(obj: EftObject, chi: Mapping[Element, Any]) -> CheckResult:
    frame = obj.frame
    instances = [
        ({"x": x, "x'": x2}, frame.singletonImp(obj.rel(x, x2), frame.iff(chi[x], chi[x2])))
        for x, x2 in cartesian(obj.carrier, repeat=2)
    ]
    return checkPi(frame, LAW_CLASSIFIER, instances)


def canonicalSubobject(obj: EftObject, chi: Mapping[Element, Any]) -> Tuple[EftObject, FunctionalPredicate]:
    """
    The canonical representative i_m: (X, ∼_m) ↪ (X, ∼) of the subobject with
    characteristic map χ, where x ∼_m x′ = x ∼ x′ ∧ χ(x).
    """
    frame = obj.frame
    eq = {(x, x2): frame.conj(obj.rel(x, x2), chi[x]) for x, x2 in cartesian(obj.carrier, repeat=2)}
    sub = EftObject(frame, obj.carrier, eq, name=f"{obj.name}|χ")
    inclusion = FunctionalPredicate(sub, obj, {(x, y): obj.rel(x, y) for x, y in cartesian(obj.carrier, repeat=2)}, {x: x for x in obj.carrier})
    return sub, inclusion


def predicatesEquivalent(obj: EftObject, first: Mapping[Element, Any], second: Mapping[Element, Any]) -> CheckResult:
    """
    Π_x (ex(x) ⊃ (χ₁(x) ⇔ χ₂(x))).
    """
    frame = obj.frame
    instances = [({"x": x}, frame.singletonImp(obj.ex(x), frame.iff(first[x], second[x]))) for x in obj.carrier]
    return checkPi(frame, LAW_CLASSIFIER, instances)


def subobjectIso(first: FunctionalPredicate, second: FunctionalPredicate) -> CheckResult:
    """
    Two monos into X are the same subobject iff their characteristic maps are
    ⇔-equivalent on existents.
    """
    return predicatesEquivalent(first.target, classify(first), classify(second))


# enumeration over finite frames


def requireFinite(frame: EvidencedFrame) -> HeytingAlgebra:
    if not isinstance(frame, HeytingFrame):
        raise FrameMismatchError(f"{frame.name} is not a finite Heyting frame")
    return frame.algebra


def downset(algebra: HeytingAlgebra, element: str) -> List[str]:
    return [candidate for candidate in algebra.elements if algebra.le(candidate, element)]


def carrierIds(size: int) -> List[str]:
    names = ["x", "y", "z", "w"]
    return names[:size] if size <= len(names) else [f"x{index}" for index in range(size)]


def enumerateObjects(frame: EvidencedFrame, size: int, ceiling: int = ENUMERATION_CEILING) -> Iterator[EftObject]:
    """
    Yields every validated object whose carrier has `size` elements, in the
    order of their symmetric equality tables.
    Raises:
        ScaleGuardError: If more than `ceiling` tables would be visited.
    """
    algebra = requireFinite(frame)
    carrier = carrierIds(size)
    cells = [(x, y) for index, x in enumerate(carrier) for y in carrier[index:]]
    total = len(algebra.elements) ** len(cells)
    if total > ceiling:
        logger.warning("refusing to enumerate %d equality tables", total)
        raise ScaleGuardError(f"{total} equality tables exceed the ceiling {ceiling}")
    for values in cartesian(algebra.elements, repeat=len(cells)):
        eq = {}
        for (x, y), value in zip(cells, values):
            eq[(x, y)] = value
            eq[(y, x)] = value
        obj = EftObject(frame, carrier, eq, name="".join(values))
        if validateObject(obj).isVerified:
            yield obj


def strictTable(fpred: FunctionalPredicate) -> tuple:
    """
    Canonical form of a morphism over a finite frame: F(x, y) ∧ ex(x) ∧ ex(y).
    Two functional predicates are eq-equivalent iff their strict tables agree.
    """
    algebra = requireFinite(fpred.frame)
    return tuple(
        algebra.meet(algebra.meet(fpred.at(x, y), fpred.source.ex(x)), fpred.target.ex(y))
        for x, y in cartesian(fpred.source.carrier, fpred.target.carrier)
    )


@lru_cache(maxsize=4096)
def _rows(algebra: HeytingAlgebra, existence: str, targetKey: tuple) -> Tuple[Tuple[str, ...], ...]:
    """
    The rows F(x, -) a point existing to degree `existence` may take into the
    object with key `targetKey`: strict, and satisfying ext, sv and tot within
    the row.
    """
    carrier, values = targetKey
    rel = dict(zip(cartesian(carrier, repeat=2), values))
    points = range(len(carrier))
    choices = [downset(algebra, algebra.meet(existence, rel[(y, y)])) for y in carrier]
    rows = []
    for row in cartesian(*choices):
        if not algebra.le(existence, fold(algebra.join, row, algebra.bottom)):
            continue
        if all(
            algebra.le(algebra.meet(rel[(carrier[i], carrier[k])], row[i]), row[k])
            and algebra.le(algebra.meet(row[i], row[k]), rel[(carrier[i], carrier[k])])
            for i, k in cartesian(points, repeat=2)
        ):
            rows.append(row)
    return tuple(rows)


def enumerateFunctionalPredicates(
    source: EftObject, target: EftObject, ceiling: int = ENUMERATION_CEILING
) -> Iterator[FunctionalPredicate]:
    """
    Yields one strict representative of every morphism source → target. Rows
    are chosen point by point from the rows valid on their own, and each new
    row must satisfy ext against the rows already chosen. Over a finite frame a
    formula is evidenceable iff it is the top element, so ext, sv and tot are
    decided in the order of the algebra.
    Raises:
        ScaleGuardError: If more than `ceiling` row combinations would be visited.
    """
    algebra = requireFinite(source.frame)
    points = source.carrier
    targetKey = (target.carrier, tuple(target.rel(y, y2) for y, y2 in cartesian(target.carrier, repeat=2)))
    rows = [_rows(algebra, source.ex(x), targetKey) for x in points]
    total = prod(len(choice) for choice in rows)
    if total > ceiling:
        logger.warning("refusing to enumerate %d row combinations", total)
        raise ScaleGuardError(f"{total} row combinations exceed the ceiling {ceiling}")
    columns = range(len(target.carrier))
    chosen: List[Tuple[str, ...]] = []

    def agrees(index: int, row: Tuple[str, ...]) -> bool:
        x = points[index]
        for other, previous in zip(points, chosen):
            for first, second, link in ((row, previous, source.rel(x, other)), (previous, row, source.rel(other, x))):
                for i, k in cartesian(columns, repeat=2):
                    bound = algebra.meet(algebra.meet(link, target.rel(target.carrier[i], target.carrier[k])), first[i])
                    if not algebra.le(bound, second[k]):
                        return False
        return True

    def extend(index: int) -> Iterator[FunctionalPredicate]:
        if index == len(points):
            table = {(x, y): row[i] for x, row in zip(points, chosen) for i, y in enumerate(target.carrier)}
            yield FunctionalPredicate(source, target, table)
            return
        for row in rows[index]:
            if agrees(index, row):
                chosen.append(row)
                yield from extend(index + 1)
                chosen.pop()

    yield from extend(0)


# characteristic transform on the partiality tier


def valueSet(core: MonadicCore, expressions: Iterable[Expression]) -> Tuple[frozenset, bool]:
    """
    ν(K) = ⋃ ν(e) for a finite set of closed expressions.
    Returns:
        Tuple[frozenset, bool]: The values, and whether some evaluation ran out
        of fuel.
    """
    values, undetermined = set(), False
    for expression in expressions:
        result = core.evaluate(expression)
        if isinstance(result, One):
            values.add(result.term)
        elif isinstance(result, Unknown):
            undetermined = True
    return frozenset(values), undetermined


def characteristicTransform(core: MonadicCore, predicate: Mapping[Element, Iterable[Expression]]) -> Dict[Element, MemberOf]:
    """
    Ch(φ)(x) is ⊤ exactly at the codes in ν(φ(x)). Evaluations that ran out of
    fuel leave Ch(φ)(x) undetermined off those codes.
    """
    return {x: MemberOf(*valueSet(core, expressions)) for x, expressions in predicate.items()}


def _searchEtCode(
    core: MonadicCore,
    first: Mapping[Element, Iterable[Expression]],
    second: Mapping[Element, Iterable[Expression]],
    candidates: Optional[Sequence[Term]],
) -> Tuple[Optional[Term], Optional[Term]]:
    firstValues = {x: valueSet(core, expressions)[0] for x, expressions in first.items()}
    secondValues = {x: valueSet(core, expressions)[0] for x, expressions in second.items()}
    pool = list(candidates) if candidates is not None else [term for term in core.universe if core.inSeparator(term)]
    pending = None
    for candidate in pool:
        works = True
        for x, values in firstValues.items():
            for b in values:
                result = core.apply(candidate, b)
                if isinstance(result, Unknown) and pending is None:
                    pending = candidate
                if not isinstance(result, One) or result.term not in secondValues.get(x, frozenset()):
                    works = False
                    break
            if not works:
                break
        if works:
            return candidate, None
    return None, pending


def checkEtOrder(
    core: MonadicCore,
    first: Mapping[Element, Iterable[Expression]],
    second: Mapping[Element, Iterable[Expression]],
    candidates: Optional[Sequence[Term]] = None,
) -> CheckResult:
    """
    Searches a code a with ν(a•b) ≠ ∅ and ν(a•b) ⊆ ν(ψ(x)) for every x and every
    b ∈ ν(φ(x)). Candidates default to the separator members of the universe.
    Returns:
        CheckResult: Verified with the code as evidence, Inconclusive if a
        failing search hit the fuel limit, Counterexample otherwise.
    """
    found, pending = _searchEtCode(core, first, second, candidates)
    if found is not None:
        return CheckResult.verified(LAW_ET_ORDER, witness={"evidence": printTerm(found)})
    if pending is not None:
        return CheckResult.inconclusive(LAW_ET_ORDER, witness={"evidence": printTerm(pending), "budget": core.bounds.fuel})
    return CheckResult.counterexample(
        LAW_ET_ORDER,
        witness={"reason": "no code maps φ into ψ", "phi": describePredicate(first), "psi": describePredicate(second)},
    )


def checkChOrder(
    core: MonadicCore,
    first: Mapping[Element, Iterable[Expression]],
    second: Mapping[Element, Iterable[Expression]],
    candidates: Optional[Sequence[Term]] = None,
) -> CheckResult:
    """
    Ch preserves order: when a code a shows φ ≤ ψ, Ch(φ)(x) ⊢a Ch(ψ)(x) for
    every x. Verified without a check when φ ≤ ψ has no code.
    """
    found, _ = _searchEtCode(core, first, second, candidates)
    if found is None:
        return CheckResult.verified(LAW_ET_ORDER, witness={"premise": "absent"})
    chFirst, chSecond = characteristicTransform(core, first), characteristicTransform(core, second)
    results = [checkEvidence(core, found, chFirst[x], chSecond[x]) for x in first]
    return CheckResult.combine(LAW_ET_ORDER, results, witness={"evidence": printTerm(found)})


def checkNaturality(
    core: MonadicCore,
    function: Mapping[Element, Element],
    predicate: Mapping[Element, Iterable[Expression]],
    transform: Callable[[MonadicCore, Mapping[Element, Iterable[Expression]]], Mapping[Element, Proposition]] = characteristicTransform,
) -> CheckResult:
    """
    Checks Ch_X(f*φ) = f*(Ch_Y φ) pointwise over the code universe, for
    f: X → Y and φ on Y. The left side applies `transform` to the reindexed
    predicate. The right side is the table of codes each φ(y) evaluates to,
    read off `core.evaluate` and reindexed along f.
    """
    expected = {}
    for y in set(function.values()):
        results = [core.evaluate(expression) for expression in predicate[y]]
        values = {result.term for result in results if isinstance(result, One)}
        undetermined = any(isinstance(result, Unknown) for result in results)
        expected[y] = (values, undetermined)
    reindexed = transform(core, {x: list(predicate[y]) for x, y in function.items()})
    for x, y in function.items():
        values, undetermined = expected[y]
        for code in core.universe:
            wanted = core.omega.top if code in values else (UNDETERMINED if undetermined else core.omega.bottom)
            actual = core.holds(reindexed[x], code)
            if actual != wanted:
                logger.info("Ch is not natural at %s over %s, code %s", x, y, printTerm(code))
                return CheckResult.counterexample(
                    LAW_NATURALITY,
                    witness={"x": str(x), "y": str(y), "code": printTerm(code), "expected": str(wanted), "actual": str(actual)},
                )
    return CheckResult.verified(LAW_NATURALITY, witness={"points": len(function)})


def characteristicRoundTrip(core: MonadicCore, prop: Proposition) -> CheckResult:
    """
    Reads a two-valued proposition off the code universe as the set of codes
    where it holds and checks that Ch of that set gives it back there.
    """
    holding = [code for code in core.universe if core.holds(prop, code) == core.omega.top]
    back = characteristicTransform(core, {"*": [Code(code) for code in holding]})["*"]
    for code in core.universe:
        original = core.holds(prop, code)
        if original is UNDETERMINED:
            return CheckResult.inconclusive(LAW_NATURALITY, witness={"code": printTerm(code)})
        if original != core.holds(back, code):
            return CheckResult.counterexample(
                LAW_NATURALITY, witness={"code": printTerm(code), "phi": describeProposition(prop)}
            )
    return CheckResult.verified(LAW_NATURALITY, witness={"codes": len(holding)})


def describePredicate(predicate: Mapping[Element, Iterable[Expression]]) -> Dict[str, List[str]]:
    return {str(x): [printExpression(expression) for expression in expressions] for x, expressions in predicate.items()}
