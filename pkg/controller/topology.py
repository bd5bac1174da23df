"""
This module provides Lawvere-Tierney topologies on the propositions of an
evidenced frame and the sheaf theory built on them: closure, density,
separatedness, the sheaf condition through j-singletons, and a brute-force
oracle that decides sheafness by counting morphisms over finite frames.
Classes:
    Topology:
        A map j on propositions, applied by calling it.
Functions:
    identityTopology, doubleNegation, tableTopology, validateTopology,
    closurePredicate, closure, isDense, isDensePredicate, checkSeparated,
    jSingleton, checkDescent, checkSheaf, domainTests, sheafTestFamily, sheafOracle,
    oracleCompare, checkJDistribution, leqCheck, restrictionsAgree,
    oracleCampaign, densityCampaign, leqCampaign.
"""

import logging
from dataclasses import dataclass
from itertools import permutations, product as cartesian
from typing import Any, Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from controller.checkconstants import (
    DEFAULT_CARRIER_LIMIT,
    ENUMERATION_CEILING,
    LAW_DEN,
    LAW_DSC,
    LAW_IDM,
    LAW_INC,
    LAW_J_DISTRIBUTION,
    LAW_LEQ,
    LAW_ORACLE,
    LAW_PRS,
    LAW_SEP,
    LAW_FEXT,
)
from controller.errors import ResolutionError, UnknownElementError
from controller.frame import EvidencedFrame
from controller.mca import InducedFrame, TopologyApplied
from controller.topos import (
    Element,
    EftObject,
    FunctionalPredicate,
    canonicalSubobject,
    checkPi,
    checkPredicateExtensional,
    classify,
    compose,
    conjAll,
    downset,
    enumerateFunctionalPredicates,
    enumerateObjects,
    fextFormula,
    liftFunction,
    predicatesEquivalent,
    requireFinite,
    strictTable,
)
from objects.result import CheckResult

logger = logging.getLogger(__name__)

ROWS = ("inc", "idm", "prs", "fext")


class Topology:
    """
    A candidate Lawvere-Tierney topology j: Φ → Φ over `frame`.
    """

    def __init__(self, frame: EvidencedFrame, name: str, operator: Callable[[Any], Any]):
        self.frame = frame
        self.name = name
        self._operator = operator

    def __call__(self, phi):
        return self._operator(phi)

    def __repr__(self):
        return f"Topology({self.name} on {self.frame.name})"


def identityTopology(frame: EvidencedFrame) -> Topology:
    return Topology(frame, "id", lambda phi: phi)


def doubleNegation(frame: EvidencedFrame) -> Topology:
    if isinstance(frame, InducedFrame):
        return Topology(frame, "dnn", lambda phi: TopologyApplied("dnn", phi))
    return Topology(frame, "dnn", lambda phi: frame.neg(frame.neg(phi)))


def tableTopology(frame: EvidencedFrame, table: Mapping[str, str], name: str = "table") -> Topology:
    """
    A topology on a finite frame given by its value at every element.
    Raises:
        FrameMismatchError: If the frame is not finite.
        UnknownElementError: If the table misses an element or names a
            foreign one.
    """
    algebra = requireFinite(frame)
    mapping = {algebra.check(key): algebra.check(value) for key, value in table.items()}
    missing = [element for element in algebra.elements if element not in mapping]
    if missing:
        raise UnknownElementError(f"topology table has no value for {missing}")
    return Topology(frame, name, lambda phi: mapping[phi])


def _rowInstances(j: Topology, row: str, propositions: Sequence[Any]) -> List[Tuple[dict, Any]]:
    frame = j.frame
    if row == "inc":
        return [({"phi": phi}, frame.singletonImp(phi, j(phi))) for phi in propositions]
    if row == "idm":
        return [({"phi": phi}, frame.singletonImp(j(j(phi)), j(phi))) for phi in propositions]
    if row == "prs":
        return [
            ({"phi": phi, "psi": psi}, frame.iff(j(frame.conj(phi, psi)), frame.conj(j(phi), j(psi))))
            for phi, psi in cartesian(propositions, repeat=2)
        ]
    return [
        ({"phi": phi, "psi": psi}, frame.singletonImp(frame.iff(phi, psi), frame.iff(j(phi), j(psi))))
        for phi, psi in cartesian(propositions, repeat=2)
    ]


ROW_LAWS = {"inc": LAW_INC, "idm": LAW_IDM, "prs": LAW_PRS, "fext": LAW_FEXT}


def validateTopology(j: Topology, propositions: Optional[Sequence[Any]] = None, rows: Sequence[str] = ROWS) -> CheckResult:
    """
    Checks that inc, idm, prs and extensionality of j are evidenceable over the
    proposition sample of the frame.
    Args:
        j (Topology): The candidate.
        propositions (Sequence | None): Propositions to quantify over.
        rows (Sequence[str]): Rows to check, in order.
    Returns:
        CheckResult: Verified with one evidence per row, or the first failing
        row.
    """
    propositions = list(propositions) if propositions is not None else j.frame.propositionSample()
    logger.debug("validating topology %s over %d propositions", j.name, len(propositions))
    witness = {"topology": j.name}
    for row in rows:
        result = checkPi(j.frame, ROW_LAWS[row], _rowInstances(j, row, propositions))
        if not result.isVerified:
            logger.info("topology %s fails %s", j.name, row)
            return result
        witness[row] = result.witness.get("evidence", "")
    return CheckResult.verified(ROW_LAWS[rows[-1]] if rows else LAW_INC, witness=witness)


def checkJDistribution(j: Topology, propositions: Optional[Sequence[Any]] = None) -> CheckResult:
    """
    Π_{φ,ψ}(j(φ ⊃ ψ) ⊃ (jφ ⊃ jψ)).
    """
    frame = j.frame
    propositions = list(propositions) if propositions is not None else frame.propositionSample()
    instances = [
        (
            {"phi": phi, "psi": psi},
            frame.singletonImp(j(frame.singletonImp(phi, psi)), frame.singletonImp(j(phi), j(psi))),
        )
        for phi, psi in cartesian(propositions, repeat=2)
    ]
    return checkPi(frame, LAW_J_DISTRIBUTION, instances)


# subobjects


def closurePredicate(j: Topology, chi: Mapping[Element, Any]) -> Dict[Element, Any]:
    return {x: j(value) for x, value in chi.items()}


def closure(j: Topology, mono: FunctionalPredicate) -> Tuple[EftObject, FunctionalPredicate]:
    """
    The closure of a subobject: the canonical subobject of j ∘ χ_m.
    """
    return canonicalSubobject(mono.target, closurePredicate(j, classify(mono)))


def isDensePredicate(j: Topology, obj: EftObject, chi: Mapping[Element, Any]) -> CheckResult:
    """
    den = Π_x(ex(x) ⊃ j(χ(x))).
    """
    frame = obj.frame
    instances = [({"x": x}, frame.singletonImp(obj.ex(x), j(chi[x]))) for x in obj.carrier]
    return checkPi(frame, LAW_DEN, instances)


def isDense(j: Topology, mono: FunctionalPredicate) -> CheckResult:
    return isDensePredicate(j, mono.target, classify(mono))


def checkSeparated(j: Topology, obj: EftObject) -> CheckResult:
    """
    sep(A) = Π_{a,b}(ex(a) ∧ ex(b) ∧ j(a ∼ b) ⊃ a ∼ b).
    """
    frame = obj.frame
    instances = [
        ({"a": a, "b": b}, frame.singletonImp(conjAll(frame, obj.ex(a), obj.ex(b), j(obj.rel(a, b))), obj.rel(a, b)))
        for a, b in cartesian(obj.carrier, repeat=2)
    ]
    result = checkPi(frame, LAW_SEP, instances)
    if result.isCounterexample and "a" in result.witness:
        a = next(point for point in obj.carrier if str(point) == result.witness["a"])
        b = next(point for point in obj.carrier if str(point) == result.witness["b"])
        values = {
            "ex(a)": frame.describe(obj.ex(a)),
            "ex(b)": frame.describe(obj.ex(b)),
            "j(a~b)": frame.describe(j(obj.rel(a, b))),
            "a~b": frame.describe(obj.rel(a, b)),
        }
        return result.model_copy(update={"witness": {**result.witness, **values}})
    return result


def jSingleton(j: Topology, mono: FunctionalPredicate, morphism: FunctionalPredicate, x: Element, a: Element):
    """
    ψ_x(a) = j(∐_s(ex(s) ∧ m(s) ∼ x ∧ g(s) ∼ a)) for m: S ↪ X and g: S → A.
    """
    frame, source = mono.frame, mono.source
    return j(
        frame.bigCoprod([conjAll(frame, source.ex(s), mono.at(s, x), morphism.at(s, a)) for s in source.carrier])
    )


def checkDescent(j: Topology, target: EftObject, mono: FunctionalPredicate, morphism: FunctionalPredicate) -> CheckResult:
    """
    dsc = Π_x(ex(x) ⊃ ∐_a(ex(a) ∧ Π_b(ex(b) ⊃ (ψ_x(b) ⇔ j(a ∼ b))))) for one
    dense m: S ↪ X and g: S → A.
    """
    frame, obj = j.frame, mono.target
    instances = []
    for x in obj.carrier:
        singleton = {b: jSingleton(j, mono, morphism, x, b) for b in target.carrier}
        candidates = [
            frame.conj(
                target.ex(a),
                frame.bigPi(
                    [frame.singletonImp(target.ex(b), frame.iff(singleton[b], j(target.rel(a, b)))) for b in target.carrier]
                ),
            )
            for a in target.carrier
        ]
        instances.append(({"x": x}, frame.singletonImp(obj.ex(x), frame.bigCoprod(candidates))))
    return checkPi(frame, LAW_DSC, instances)


@dataclass
class DenseTest:
    """
    One instance of the sheaf condition: a dense canonical subobject S of X
    with its inclusion, and a morphism g: S → A.
    """

    domain: EftObject
    predicate: Dict[Element, Any]
    inclusion: FunctionalPredicate
    morphism: Optional[FunctionalPredicate] = None

    def describe(self) -> Dict[str, Any]:
        described = {"X": self.domain.describeTable(), "chi": {str(x): str(v) for x, v in self.predicate.items()}}
        if self.morphism is not None:
            described["g"] = self.morphism.describeTable()
        return described


def denseSubobjects(j: Topology, obj: EftObject) -> Iterator[DenseTest]:
    """
    Yields one canonical representative of every dense subobject of a finite
    object, as the strict predicates χ(x) ≤ ex(x) that are extensional.
    """
    algebra = requireFinite(obj.frame)
    for values in cartesian(*[downset(algebra, obj.ex(x)) for x in obj.carrier]):
        chi = dict(zip(obj.carrier, values))
        if not checkPredicateExtensional(obj, chi).isVerified:
            continue
        if not isDensePredicate(j, obj, chi).isVerified:
            continue
        _, inclusion = canonicalSubobject(obj, chi)
        yield DenseTest(obj, chi, inclusion)


DomainTests = List[Tuple[EftObject, List[DenseTest]]]


def _relabellingKey(obj: EftObject) -> tuple:
    indices = range(len(obj.carrier))
    return min(
        tuple(obj.rel(order[a], order[b]) for a, b in cartesian(indices, repeat=2))
        for order in permutations(obj.carrier)
    )


def domainTests(j: Topology, carrierLimit: int, ceiling: int = ENUMERATION_CEILING) -> DomainTests:
    """
    The objects with at most `carrierLimit` points, one per equality table up
    to relabelling of the carrier, each with its dense subobjects. Both sides
    of the sheaf condition are invariant under relabelling the domain.
    """
    seen = set()
    domains = []
    for size in range(1, carrierLimit + 1):
        for obj in enumerateObjects(j.frame, size, ceiling):
            key = (size, _relabellingKey(obj))
            if key in seen:
                continue
            seen.add(key)
            domains.append((obj, list(denseSubobjects(j, obj))))
    logger.debug("%d test domains with at most %d points for %s", len(domains), carrierLimit, j.name)
    return domains


def sheafTestFamily(
    j: Topology,
    target: EftObject,
    carrierLimit: int = DEFAULT_CARRIER_LIMIT,
    ceiling: int = ENUMERATION_CEILING,
    domains: Optional[DomainTests] = None,
) -> Iterator[DenseTest]:
    """
    Every dense subobject of every object with at most `carrierLimit` points,
    paired with every morphism from it into `target`.
    """
    for _, tests in (domains if domains is not None else domainTests(j, carrierLimit, ceiling)):
        for test in tests:
            for morphism in enumerateFunctionalPredicates(test.inclusion.source, target, ceiling):
                yield DenseTest(test.domain, test.predicate, test.inclusion, morphism)


def checkSheaf(
    j: Topology,
    target: EftObject,
    family: Optional[Sequence[DenseTest]] = None,
    carrierLimit: int = DEFAULT_CARRIER_LIMIT,
    domains: Optional[DomainTests] = None,
) -> CheckResult:
    """
    Checks sep(A) and then dsc for every test of the family. Without a family,
    the enumerated `sheafTestFamily` of a finite frame is used.
    Returns:
        CheckResult: Verified with the number of tests, the sep failure, or the
        dsc failure with the test that produced it.
    """
    separated = checkSeparated(j, target)
    if not separated.isVerified:
        return separated
    tests = family if family is not None else sheafTestFamily(j, target, carrierLimit, domains=domains)
    count, pending = 0, None
    for test in tests:
        count += 1
        result = checkDescent(j, target, test.inclusion, test.morphism)
        if result.isCounterexample:
            logger.info("%s is not a %s-sheaf", target.name, j.name)
            return result.model_copy(update={"witness": {**result.witness, **test.describe()}})
        if result.isInconclusive and pending is None:
            pending = result
    if pending is not None:
        return pending
    return CheckResult.verified(LAW_DSC, witness={"topology": j.name, "tests": count, "carrierLimit": carrierLimit})


def sheafOracle(
    j: Topology,
    target: EftObject,
    carrierLimit: int = DEFAULT_CARRIER_LIMIT,
    ceiling: int = ENUMERATION_CEILING,
    domains: Optional[DomainTests] = None,
) -> CheckResult:
    """
    Decides the sheaf condition by enumeration: for every dense i: S ↪ X with
    X of at most `carrierLimit` points, precomposition Hom(X, A) → Hom(S, A)
    must be a bijection of strict representatives.
    Raises:
        FrameMismatchError: If the frame is not finite.
        ScaleGuardError: If an enumeration passes `ceiling`.
    Returns:
        CheckResult: Verified, or a Counterexample naming the test and whether
        injectivity or surjectivity failed.
    """
    requireFinite(j.frame)
    if domains is None:
        domains = domainTests(j, carrierLimit, ceiling)
    tests = 0
    for domain, denseTests in domains:
        homs = list(enumerateFunctionalPredicates(domain, target, ceiling))
        for test in denseTests:
            tests += 1
            restricted: Dict[tuple, tuple] = {}
            for hom in homs:
                image = strictTable(compose(hom, test.inclusion))
                if image in restricted:
                    return CheckResult.counterexample(
                        LAW_ORACLE,
                        witness={"reason": "not injective", **test.describe(), "f": hom.describeTable(), "image": list(image)},
                    )
                restricted[image] = strictTable(hom)
            for morphism in enumerateFunctionalPredicates(test.inclusion.source, target, ceiling):
                if strictTable(morphism) not in restricted:
                    return CheckResult.counterexample(
                        LAW_ORACLE, witness={"reason": "not surjective", **test.describe(), "g": morphism.describeTable()}
                    )
    return CheckResult.verified(LAW_ORACLE, witness={"tests": tests, "domains": len(domains), "carrierLimit": carrierLimit})


def oracleCompare(
    j: Topology, target: EftObject, carrierLimit: int = DEFAULT_CARRIER_LIMIT, domains: Optional[DomainTests] = None
) -> CheckResult:
    """
    Runs the internal sheaf check and the oracle and reports whether their
    verdicts agree. Both use the same test domains.
    """
    if domains is None:
        domains = domainTests(j, carrierLimit)
    internal = checkSheaf(j, target, carrierLimit=carrierLimit, domains=domains)
    oracle = sheafOracle(j, target, carrierLimit, domains=domains)

    witness = {"internal": internal.verdict.value, "internalLaw": internal.law, "oracle": oracle.verdict.value}
    if internal.isInconclusive:
        return CheckResult.inconclusive(LAW_ORACLE, witness=witness)
    if internal.isVerified == oracle.isVerified:
        return CheckResult.verified(LAW_ORACLE, witness=witness)
    logger.warning("sheaf check and oracle disagree on %s: %s", target.name, witness)
    return CheckResult.counterexample(LAW_ORACLE, witness={**witness, "internalWitness": internal.witness, "oracleWitness": oracle.witness})


# the order on morphisms restricted to a subobject


def leqCheck(
    obj: EftObject,
    chi: Mapping[Element, Any],
    first: Mapping[Element, Element],
    second: Mapping[Element, Element],
    target: EftObject,
) -> CheckResult:
    """
    leq(f, g) = Π_x(x ∼_m x ⊃ f(x) ∼ g(x)) for the subobject with
    characteristic map χ.
    """
    frame = obj.frame
    instances = [
        ({"x": x}, frame.singletonImp(frame.conj(obj.ex(x), chi[x]), target.rel(first[x], second[x])))
        for x in obj.carrier
    ]
    return checkPi(frame, LAW_LEQ, instances)


def restrictionsAgree(
    obj: EftObject,
    chi: Mapping[Element, Any],
    first: Mapping[Element, Element],
    second: Mapping[Element, Element],
    target: EftObject,
) -> bool:
    """
    True when f ∘ i_m and g ∘ i_m have the same strict representative.
    """
    _, inclusion = canonicalSubobject(obj, chi)
    restrictions = []
    for function in (first, second):
        lifted, result = liftFunction(function, obj, target)
        if lifted is None:
            raise ResolutionError(f"function is not extensional: {result.witness}", location="leq")
        restrictions.append(strictTable(compose(lifted, inclusion)))
    return restrictions[0] == restrictions[1]


# campaigns over enumerated objects


def _objectsUpTo(frame: EvidencedFrame, size: int) -> Iterator[EftObject]:
    for count in range(1, size + 1):
        yield from enumerateObjects(frame, count)


def _extensionalPredicates(obj: EftObject) -> Iterator[Dict[Element, Any]]:
    algebra = requireFinite(obj.frame)
    for values in cartesian(*[downset(algebra, obj.ex(x)) for x in obj.carrier]):
        chi = dict(zip(obj.carrier, values))
        if checkPredicateExtensional(obj, chi).isVerified:
            yield chi


def oracleCampaign(j: Topology, size: int, carrierLimit: int = DEFAULT_CARRIER_LIMIT) -> CheckResult:
    """
    Compares the internal sheaf check with the oracle on every validated object
    with at most `size` points. The test domains, up to `carrierLimit` points,
    are enumerated once for the whole campaign.
    """
    domains = domainTests(j, carrierLimit)
    objects = 0
    for obj in _objectsUpTo(j.frame, size):
        objects += 1
        result = oracleCompare(j, obj, carrierLimit, domains=domains)
        if not result.isVerified:
            return result.model_copy(update={"witness": {**result.witness, "object": obj.describeTable()}})
    witness = {"topology": j.name, "objects": objects, "domains": len(domains), "carrierLimit": carrierLimit}
    return CheckResult.verified(LAW_ORACLE, witness=witness)



def densityCampaign(j: Topology, size: int) -> CheckResult:
    """
    On every object with at most `size` points and every subobject of it,
    den(m) must agree with the closure of m being all of X.
    """
    instances = 0
    for obj in _objectsUpTo(j.frame, size):
        whole = {x: obj.ex(x) for x in obj.carrier}
        for chi in _extensionalPredicates(obj):
            instances += 1
            dense = isDensePredicate(j, obj, chi).isVerified
            closed = predicatesEquivalent(obj, closurePredicate(j, chi), whole).isVerified
            if dense != closed:
                witness = {"object": obj.describeTable(), "chi": {str(x): str(v) for x, v in chi.items()}, "den": dense}
                return CheckResult.counterexample(LAW_DEN, witness=witness)
    return CheckResult.verified(LAW_DEN, witness={"topology": j.name, "instances": instances})


def leqCampaign(frame: EvidencedFrame, size: int) -> CheckResult:
    """
    On all objects X and A with at most `size` points, every subobject of X and
    every pair of extensional functions X → A, leq must agree with equality of
    the restricted composites.
    """
    objects = list(_objectsUpTo(frame, size))
    instances = 0
    for obj, target in cartesian(objects, repeat=2):
        functions = []
        for images in cartesian(target.carrier, repeat=len(obj.carrier)):
            function = dict(zip(obj.carrier, images))
            if checkPi(frame, LAW_FEXT, fextFormula(function, obj, target)).isVerified:
                functions.append(function)
        for chi in _extensionalPredicates(obj):
            for first, second in cartesian(functions, repeat=2):
                instances += 1
                internal = leqCheck(obj, chi, first, second, target).isVerified
                if internal != restrictionsAgree(obj, chi, first, second, target):
                    witness = {
                        "object": obj.describeTable(),
                        "target": target.describeTable(),
                        "chi": {str(x): str(v) for x, v in chi.items()},
                        "f": {str(x): str(y) for x, y in first.items()},
                        "g": {str(x): str(y) for x, y in second.items()},
                        "leq": internal,
                    }
                    return CheckResult.counterexample(LAW_LEQ, witness=witness)
    return CheckResult.verified(LAW_LEQ, witness={"instances": instances, "size": size})
