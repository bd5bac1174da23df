"""
This module provides finite Heyting algebras with explicit operation tables.
They serve as the truth values of every tier and as the propositions of the
trivial finite frames.
Classes:
    HeytingAlgebra:
        Carrier, order relation and meet/join/implication tables.
Functions:
    algebraFromOrder(name, elements, order, tables) -> HeytingAlgebra:
        Builds an algebra from generating order pairs, deriving missing tables.
    builtinAlgebra(name) -> HeytingAlgebra:
        BOOL2, CHAIN3 or DIAMOND4.
    validateAlgebra(algebra) -> CheckResult:
        Checks order, bounds, meet, join and residuation exhaustively.
    validateDoubleNegation(algebra) -> CheckResult:
        Checks the inclusion, idempotence and meet preservation of ¬¬.
"""

import logging
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from controller.checkconstants import LAW_BOUNDS, LAW_IDM, LAW_INC, LAW_JOIN, LAW_MEET, LAW_ORDER, LAW_PRS, LAW_RESIDUATION
from controller.errors import MalformedAlgebraError, UnknownElementError, UnknownNameError
from objects.result import CheckResult

logger = logging.getLogger(__name__)

Table = Dict[Tuple[str, str], str]

BUILTIN_ORDERS: Dict[str, Tuple[List[str], List[Tuple[str, str]]]] = {
    "BOOL2": (["0", "1"], [("0", "1")]),
    "CHAIN3": (["0", "h", "1"], [("0", "h"), ("h", "1")]),
    "DIAMOND4": (["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
}


class HeytingAlgebra:
    """
    A finite Heyting algebra. Element ids are strings; `leq` is the full order
    relation as a set of pairs and the three operation tables are total.
    """

    def __init__(
        self,
        name: str,
        elements: Sequence[str],
        leq: Iterable[Tuple[str, str]],
        meetTable: Table,
        joinTable: Table,
        impTable: Table,
        top: str,
        bottom: str,
    ):
        self.name = name
        self.elements = list(elements)
        self.carrier = frozenset(self.elements)
        self.leq = frozenset(leq)
        self.meetTable = dict(meetTable)
        self.joinTable = dict(joinTable)
        self.impTable = dict(impTable)
        self.top = top
        self.bottom = bottom
        self._checkTotal()

    def _checkTotal(self):
        carrier = set(self.elements)
        if len(carrier) != len(self.elements):
            raise MalformedAlgebraError(f"{self.name}: duplicate element ids")
        for label in (self.top, self.bottom):
            if label not in carrier:
                raise MalformedAlgebraError(f"{self.name}: {label!r} is not an element")
        for tableName, table in (("meet", self.meetTable), ("join", self.joinTable), ("imp", self.impTable)):
            for a, b in product(self.elements, repeat=2):
                value = table.get((a, b))
                if value is None:
                    raise MalformedAlgebraError(f"{self.name}: {tableName} table missing ({a}, {b})")
                if value not in carrier:
                    raise MalformedAlgebraError(f"{self.name}: {tableName}({a}, {b}) = {value!r} is not an element")

    def __repr__(self):
        return f"HeytingAlgebra({self.name})"

    def check(self, element: str) -> str:
        if element not in self.carrier:
            raise UnknownElementError(f"{element!r} is not an element of {self.name}")
        return element

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.leq

    def meet(self, a: str, b: str) -> str:
        return self.meetTable[(a, b)]

    def join(self, a: str, b: str) -> str:
        return self.joinTable[(a, b)]

    def imp(self, a: str, b: str) -> str:
        return self.impTable[(a, b)]

    def neg(self, a: str) -> str:
        return self.imp(a, self.bottom)

    def doubleNegation(self, a: str) -> str:
        return self.neg(self.neg(a))

    def iff(self, a: str, b: str) -> str:
        return self.meet(self.imp(a, b), self.imp(b, a))

    def bigMeet(self, subset: Iterable[str]) -> str:
        """
        Returns the infimum of `subset`; the empty meet is `top`.
        Raises:
            UnknownElementError: If a member is outside the carrier.
        """
        result = self.top
        for element in subset:
            result = self.meet(result, self.check(element))
        return result

    def bigJoin(self, subset: Iterable[str]) -> str:
        result = self.bottom
        for element in subset:
            result = self.join(result, self.check(element))
        return result

    def replaced(self, operation: str, a: str, b: str, value: str) -> "HeytingAlgebra":
        """
        Returns a copy with one table entry overwritten. Used to build corrupted
        algebras for validation.
        """
        tables = {"meet": dict(self.meetTable), "join": dict(self.joinTable), "imp": dict(self.impTable)}
        if operation not in tables:
            raise UnknownNameError(f"unknown operation {operation!r}")
        tables[operation][(a, b)] = value
        return HeytingAlgebra(
            f"{self.name}*", self.elements, self.leq, tables["meet"], tables["join"], tables["imp"], self.top, self.bottom
        )


def orderClosure(elements: Sequence[str], order: Iterable[Tuple[str, str]]) -> frozenset:
    """
    Computes the reflexive transitive closure of the generating pairs.
    Raises:
        UnknownElementError: If a pair mentions an element outside the carrier.
        MalformedAlgebraError: If the closure is not antisymmetric.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    for low, high in order:
        for element in (low, high):
            if element not in graph:
                raise UnknownElementError(f"order pair mentions unknown element {element!r}")
        graph.add_edge(low, high)
    cycles = [component for component in nx.strongly_connected_components(graph) if len(component) > 1]
    if cycles:
        raise MalformedAlgebraError(f"order is not antisymmetric on {sorted(cycles[0])}")
    closure = nx.transitive_closure(graph, reflexive=True)
    return frozenset(closure.edges())


def _extremum(elements: Sequence[str], leq: frozenset, candidates: List[str], greatest: bool) -> Optional[str]:
    for candidate in candidates:
        if all(((other, candidate) if greatest else (candidate, other)) in leq for other in candidates):
            return candidate
    return None


def algebraFromOrder(
    name: str,
    elements: Sequence[str],
    order: Iterable[Tuple[str, str]],
    tables: Optional[Dict[str, Table]] = None,
) -> HeytingAlgebra:
    """
    Builds an algebra from generating order pairs. Tables that are not supplied
    are derived: meet and join as greatest lower and least upper bounds, and
    implication as the largest x with meet(x, b) ≤ c.
    Args:
        name (str): Name of the algebra.
        elements (Sequence[str]): Element ids.
        order (Iterable[Tuple[str, str]]): Generating pairs (low, high).
        tables (Dict[str, Table] | None): Optional explicit "meet", "join" and
            "imp" tables keyed by element pairs.
    Returns:
        HeytingAlgebra: The algebra. Supplied tables are kept as given and
        should be passed through `validateAlgebra`.
    Raises:
        MalformedAlgebraError: If the order is not a lattice or is not
            distributive enough to admit an implication.
    """
    tables = tables or {}
    leq = orderClosure(elements, order)
    elements = list(elements)
    top = _extremum(elements, leq, elements, greatest=True)
    bottom = _extremum(elements, leq, elements, greatest=False)
    if top is None or bottom is None:
        raise MalformedAlgebraError(f"{name}: order has no top or no bottom")

    def derivedMeet(a, b):
        lower = [x for x in elements if (x, a) in leq and (x, b) in leq]
        result = _extremum(elements, leq, lower, greatest=True)
        if result is None:
            raise MalformedAlgebraError(f"{name}: ({a}, {b}) has no greatest lower bound")
        return result

    def derivedJoin(a, b):
        upper = [x for x in elements if (a, x) in leq and (b, x) in leq]
        result = _extremum(elements, leq, upper, greatest=False)
        if result is None:
            raise MalformedAlgebraError(f"{name}: ({a}, {b}) has no least upper bound")
        return result

    pairs = list(product(elements, repeat=2))
    meetTable = tables.get("meet") or {(a, b): derivedMeet(a, b) for a, b in pairs}
    joinTable = tables.get("join") or {(a, b): derivedJoin(a, b) for a, b in pairs}

    def derivedImp(b, c):
        candidates = [x for x in elements if (meetTable[(x, b)], c) in leq]
        result = _extremum(elements, leq, candidates, greatest=True)
        if result is None:
            raise MalformedAlgebraError(f"{name}: no implication for ({b}, {c})")
        return result

    impTable = tables.get("imp") or {(b, c): derivedImp(b, c) for b, c in pairs}
    return HeytingAlgebra(name, elements, leq, meetTable, joinTable, impTable, top, bottom)


def builtinAlgebra(name: str) -> HeytingAlgebra:
    """
    Returns one of the builtin algebras.
    Args:
        name (str): "BOOL2" ({0, 1}), "CHAIN3" ({0, h, 1}) or "DIAMOND4"
            ({0, a, b, 1} with a and b incomparable).
    Raises:
        UnknownNameError: For any other name.
    """
    if name not in BUILTIN_ORDERS:
        raise UnknownNameError(f"unknown algebra {name!r}")
    elements, order = BUILTIN_ORDERS[name]
    return algebraFromOrder(name, elements, order)


def validateAlgebra(algebra: HeytingAlgebra) -> CheckResult:
    """
    Checks the Heyting laws exhaustively: the order is a partial order, top and
    bottom are extremal, meet and join are infimum and supremum, and
    meet(a, b) ≤ c holds exactly when a ≤ imp(b, c).
    Args:
        algebra (HeytingAlgebra): The algebra to check.
    Returns:
        CheckResult: Verified, or a Counterexample naming the law and the
        violating elements.
    """
    logger.debug("validating algebra %s", algebra.name)
    elements = algebra.elements
    le = algebra.le
    bounds = {"algebra": algebra.name, "elements": len(elements)}
    result = _firstViolation(algebra, elements, le)
    if result is not None:
        result.bounds = bounds
        logger.info("algebra %s violates %s at %s", algebra.name, result.law, result.witness)
        return result
    return CheckResult.verified(LAW_RESIDUATION, witness={"algebra": algebra.name}, bounds=bounds)


def _firstViolation(algebra, elements, le) -> Optional[CheckResult]:
    for a in elements:
        if not le(a, a):
            return CheckResult.counterexample(LAW_ORDER, witness={"a": a, "reason": "not reflexive"})
    for a, b in product(elements, repeat=2):
        if a != b and le(a, b) and le(b, a):
            return CheckResult.counterexample(LAW_ORDER, witness={"a": a, "b": b, "reason": "not antisymmetric"})
    for a, b, c in product(elements, repeat=3):
        if le(a, b) and le(b, c) and not le(a, c):
            return CheckResult.counterexample(LAW_ORDER, witness={"a": a, "b": b, "c": c, "reason": "not transitive"})
    for a in elements:
        if not le(a, algebra.top) or not le(algebra.bottom, a):
            return CheckResult.counterexample(LAW_BOUNDS, witness={"a": a})
    for a, b in product(elements, repeat=2):
        m = algebra.meet(a, b)
        if not (le(m, a) and le(m, b)) or any(le(c, a) and le(c, b) and not le(c, m) for c in elements):
            return CheckResult.counterexample(LAW_MEET, witness={"a": a, "b": b, "meet": m})
        j = algebra.join(a, b)
        if not (le(a, j) and le(b, j)) or any(le(a, c) and le(b, c) and not le(j, c) for c in elements):
            return CheckResult.counterexample(LAW_JOIN, witness={"a": a, "b": b, "join": j})
    for a, b, c in product(elements, repeat=3):
        if le(algebra.meet(a, b), c) != le(a, algebra.imp(b, c)):
            return CheckResult.counterexample(
                LAW_RESIDUATION,
                witness={"a": a, "b": b, "c": c, "meet": algebra.meet(a, b), "imp": algebra.imp(b, c)},
            )
    return None


def validateDoubleNegation(algebra: HeytingAlgebra) -> CheckResult:
    """
    Checks x ≤ ¬¬x, ¬¬¬¬x ≤ ¬¬x and ¬¬(x ∧ y) = ¬¬x ∧ ¬¬y for all elements.
    """
    dn = algebra.doubleNegation
    for x in algebra.elements:
        if not algebra.le(x, dn(x)):
            return CheckResult.counterexample(LAW_INC, witness={"x": x, "jx": dn(x)})
        if not algebra.le(dn(dn(x)), dn(x)):
            return CheckResult.counterexample(LAW_IDM, witness={"x": x})
    for x, y in product(algebra.elements, repeat=2):
        if dn(algebra.meet(x, y)) != algebra.meet(dn(x), dn(y)):
            return CheckResult.counterexample(LAW_PRS, witness={"x": x, "y": y})
    return CheckResult.verified(LAW_PRS, witness={"algebra": algebra.name})
