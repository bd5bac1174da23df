"""
This module provides the tripos of predicate families over a finite evidenced
frame: the fibre order, reindexing, the two quantifiers, the generic element,
and exhaustive campaigns for the adjunctions and the Beck-Chevalley condition.
Classes:
    FinitePredicateFamily:
        A map φ: X → Φ on a finite index set.
Functions:
    ufamOrder(frame, phi, psi) -> CheckResult
    ufamReindex(function, psi) -> FinitePredicateFamily
    ufamExists(function, phi, codomain) -> FinitePredicateFamily
    ufamForall(function, phi, codomain) -> FinitePredicateFamily
    ufamGeneric(frame) -> FinitePredicateFamily
    ufamCode(phi) -> Dict
    checkAdjunctions(frame, size) -> CheckResult
    checkBeckChevalley(frame, size) -> CheckResult
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from controller.checkconstants import ENUMERATION_CEILING, LAW_ADJUNCTION, LAW_BECK_CHEVALLEY, LAW_UFAM_ORDER
from controller.errors import ScaleGuardError
from controller.frame import EvidencedFrame
from controller.topos import requireFinite
from objects.result import CheckResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FinitePredicateFamily:
    frame: EvidencedFrame = field(compare=False)
    index: Tuple[Hashable, ...]
    values: Tuple[Any, ...]

    @classmethod
    def fromMapping(cls, frame: EvidencedFrame, mapping: Mapping[Hashable, Any]) -> "FinitePredicateFamily":
        return cls(frame, tuple(mapping), tuple(mapping.values()))

    def at(self, x: Hashable):
        return self.values[self.index.index(x)]

    def asDict(self) -> Dict[Hashable, Any]:
        return dict(zip(self.index, self.values))


def ufamOrder(frame: EvidencedFrame, phi: FinitePredicateFamily, psi: FinitePredicateFamily) -> CheckResult:
    """
    φ ≤_X ψ iff one evidence e has φ(x) ⊢e ψ(x) for every x. Candidates are
    tried in enumeration order.
    Returns:
        CheckResult: Verified with e, or Counterexample naming the first point
        each candidate failed at.
    """
    failures = {}
    for evidence in frame.evidenceCandidates():
        for x in phi.index:
            if not frame.entails(phi.at(x), evidence, psi.at(x)).isVerified:
                failures[frame.describe(evidence)] = str(x)
                break
        else:
            return CheckResult.verified(LAW_UFAM_ORDER, witness={"evidence": frame.describe(evidence)})
    return CheckResult.counterexample(LAW_UFAM_ORDER, witness={"failures": failures})


def ufamReindex(function: Mapping[Hashable, Hashable], psi: FinitePredicateFamily) -> FinitePredicateFamily:
    return FinitePredicateFamily.fromMapping(psi.frame, {x: psi.at(y) for x, y in function.items()})


def _fibre(function: Mapping[Hashable, Hashable], phi: FinitePredicateFamily, y: Hashable) -> List[Any]:
    return [phi.at(x) for x, image in function.items() if image == y]


def ufamExists(
    function: Mapping[Hashable, Hashable], phi: FinitePredicateFamily, codomain: Sequence[Hashable]
) -> FinitePredicateFamily:
    """
    ∃_f φ (y) = ∐{φ(x) | f(x) = y}.
    """
    frame = phi.frame
    return FinitePredicateFamily.fromMapping(frame, {y: frame.bigCoprod(_fibre(function, phi, y)) for y in codomain})


def ufamForall(
    function: Mapping[Hashable, Hashable], phi: FinitePredicateFamily, codomain: Sequence[Hashable]
) -> FinitePredicateFamily:
    """
    ∀_f φ (y) = Π{φ(x) | f(x) = y}.
    """
    frame = phi.frame
    return FinitePredicateFamily.fromMapping(frame, {y: frame.bigPi(_fibre(function, phi, y)) for y in codomain})


def ufamGeneric(frame: EvidencedFrame) -> FinitePredicateFamily:
    """
    The generic element σ = id on Φ.
    """
    propositions = frame.propositionSample()
    return FinitePredicateFamily(frame, tuple(propositions), tuple(propositions))


def ufamCode(phi: FinitePredicateFamily) -> Dict[Hashable, Any]:
    """
    The code ⌜φ⌝: X → Φ, so that reindexing the generic element along it gives φ.
    """
    return phi.asDict()


def _sets(size: int) -> List[Tuple[str, ...]]:
    return [tuple(str(index) for index in range(count)) for count in range(1, size + 1)]


def _functions(domain: Sequence[Hashable], codomain: Sequence[Hashable]) -> Iterator[Dict[Hashable, Hashable]]:
    for images in product(codomain, repeat=len(domain)):
        yield dict(zip(domain, images))


def _families(frame: EvidencedFrame, index: Sequence[Hashable]) -> Iterator[FinitePredicateFamily]:
    for values in product(frame.propositionSample(), repeat=len(index)):
        yield FinitePredicateFamily(frame, tuple(index), values)


def _guard(total: int, ceiling: int, what: str):
    if total > ceiling:
        logger.warning("refusing to enumerate %d %s", total, what)
        raise ScaleGuardError(f"{total} {what} exceed the ceiling {ceiling}")


def _partitions(total: int, parts: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    if parts == 0:
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _functionsUpToRelabelling(domain: Sequence[Hashable], codomain: Sequence[Hashable]) -> Iterator[Dict[Hashable, Hashable]]:
    """
    One function per class under relabelling domain and codomain: the first
    block of points goes to the first image, the next block to the second, and
    so on, with block sizes a partition of the domain size.
    """
    for blocks in _partitions(len(domain), len(codomain)):
        function, start = {}, 0
        for image, block in zip(codomain, blocks):
            for x in domain[start:start + block]:
                function[x] = image
            start += block
        yield function


def checkAdjunctions(frame: EvidencedFrame, size: int, ceiling: int = ENUMERATION_CEILING) -> CheckResult:
    """
    Checks ∃_f φ ≤ ψ ⇔ φ ≤ f*ψ and f*ψ ≤ φ ⇔ ψ ≤ ∀_f φ for every function
    between sets of at most `size` points and all families on them. Both
    sides are invariant under relabelling the two sets, so functions are taken
    one per fibre-size pattern.
    Raises:
        FrameMismatchError: If the frame is not finite.
        ScaleGuardError: If more than `ceiling` instances would be visited.
    """
    requireFinite(frame)
    width = len(frame.propositionSample())
    total = sum(
        len(list(_partitions(len(domain), len(codomain)))) * width ** (len(domain) + len(codomain))
        for domain in _sets(size)
        for codomain in _sets(size)
    )
    _guard(total, ceiling, "adjunction instances")
    logger.debug("checking adjunctions on %s up to size %d", frame.name, size)
    instances = 0
    for domain, codomain in product(_sets(size), repeat=2):
        codomainFamilies = list(_families(frame, codomain))
        for function in _functionsUpToRelabelling(domain, codomain):
            for phi in _families(frame, domain):
                exists = ufamExists(function, phi, codomain)
                forall = ufamForall(function, phi, codomain)
                for psi in codomainFamilies:
                    instances += 1
                    pulled = ufamReindex(function, psi)
                    pairs = (
                        ("exists", ufamOrder(frame, exists, psi), ufamOrder(frame, phi, pulled)),
                        ("forall", ufamOrder(frame, pulled, phi), ufamOrder(frame, psi, forall)),
                    )
                    for side, left, right in pairs:
                        if left.isVerified != right.isVerified:
                            witness = {
                                "side": side,
                                "f": {str(k): str(v) for k, v in function.items()},
                                "phi": [frame.describe(value) for value in phi.values],
                                "psi": [frame.describe(value) for value in psi.values],
                            }
                            logger.info("adjunction fails at %s", witness)
                            return CheckResult.counterexample(LAW_ADJUNCTION, witness=witness)
    return CheckResult.verified(LAW_ADJUNCTION, witness={"instances": instances, "size": size})


def checkBeckChevalley(frame: EvidencedFrame, size: int, ceiling: int = ENUMERATION_CEILING) -> CheckResult:
    """
    For every pullback P of k: X → Y along h: Z → Y with projections f: P → Z
    and g: P → X, checks ∀_f(g*φ) ≃ h*(∀_k φ) in both directions for every
    family φ on X. All of X, Y and Z have at most `size` points.
    Raises:
        FrameMismatchError: If the frame is not finite.
        ScaleGuardError: If more than `ceiling` instances would be visited.
    """
    requireFinite(frame)
    width = len(frame.propositionSample())
    sets = _sets(size)
    total = sum(
        len(y) ** (len(x) + len(z)) * width ** len(x) for x in sets for y in sets for z in sets
    )
    _guard(total, ceiling, "pullback instances")
    logger.debug("checking Beck-Chevalley on %s up to size %d", frame.name, size)
    instances = 0
    for x, y, z in product(sets, repeat=3):
        for k in _functions(x, y):
            for h in _functions(z, y):
                pullback = [(a, c) for a in x for c in z if k[a] == h[c]]
                f = {pair: pair[1] for pair in pullback}
                g = {pair: pair[0] for pair in pullback}
                for phi in _families(frame, x):
                    instances += 1
                    left = ufamForall(f, ufamReindex(g, phi), z)
                    right = ufamReindex(h, ufamForall(k, phi, y))
                    for first, second in ((left, right), (right, left)):
                        result = ufamOrder(frame, first, second)
                        if not result.isVerified:
                            witness = {
                                "k": {str(a): str(b) for a, b in k.items()},
                                "h": {str(a): str(b) for a, b in h.items()},
                                "phi": [frame.describe(value) for value in phi.values],
                            }
                            logger.info("Beck-Chevalley fails at %s", witness)
                            return CheckResult.counterexample(LAW_BECK_CHEVALLEY, witness=witness)
    return CheckResult.verified(LAW_BECK_CHEVALLEY, witness={"instances": instances, "size": size})
