"""
This module provides the combinatory terms that serve as codes, together with
bracket abstraction, budgeted reduction, enumeration, parsing and printing.
Classes:
    Atom, Var, App, Cont:
        Immutable term nodes. `Cont` only appears in terms built by the
        continuation machine.
    ReductionOutcome:
        Result of `reduce`: a value or an exhausted budget.
Functions:
    app(*terms) -> Term:
        Left-associated application.
    abstract(var, body) -> Term:
        Bracket abstraction with the identity, constant and S rules.
    reduce(term, budget) -> ReductionOutcome:
        Head-first reduction to weak head normal form within a step budget.
    normalize(term, budget) -> ReductionOutcome:
        The same, continued inside the arguments to a full normal form.
    enumerateTerms(basis, maxLeaves) -> List[Term]:
        All closed application trees over `basis` up to `maxLeaves` leaves.
    codeUniverse(basis, maxLeaves, fuel) -> List[Term]:
        The distinct normal forms of the enumerated terms.
    parseTerm(text, allowVariables) -> Term / printTerm(term) -> str:
        The textual term grammar.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple, Union

from controller.checkconstants import DEFAULT_UNIVERSE_FUEL
from controller.errors import OpenTermError, TermSyntaxError, UnknownNameError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Cont:
    """
    A captured continuation: the argument stack that was pending when `CC`
    fired, and the continuation that stack would eventually return to.
    """

    stack: Tuple["Term", ...]
    cont: Optional["Term"] = None


Term = Union[Atom, Var, App, Cont]

S = Atom("S")
K = Atom("K")
P = Atom("P")
FST = Atom("FST")
SND = Atom("SND")
CC = Atom("CC")
Z0 = Atom("Z0")

ATOMS = {atom.name: atom for atom in (S, K, P, FST, SND, CC, Z0)}
BASIS_ORDER = tuple(ATOMS)


@dataclass(frozen=True)
class ReductionOutcome:
    value: Optional[Term]
    steps: int

    @property
    def isValue(self) -> bool:
        return self.value is not None


def app(*terms: Term) -> Term:
    result = terms[0]
    for term in terms[1:]:
        result = App(result, term)
    return result


def unwind(term: Term) -> Tuple[Term, List[Term]]:
    """
    Splits a term into its head and the list of arguments it is applied to.
    """
    args = []
    while isinstance(term, App):
        args.append(term.right)
        term = term.left
    args.reverse()
    return term, args


def freeVariables(term: Term) -> frozenset:
    if isinstance(term, Var):
        return frozenset([term.name])
    if isinstance(term, App):
        return freeVariables(term.left) | freeVariables(term.right)
    if isinstance(term, Cont):
        names = frozenset()
        for item in term.stack:
            names |= freeVariables(item)
        if term.cont is not None:
            names |= freeVariables(term.cont)
        return names
    return frozenset()


def isClosed(term: Term) -> bool:
    return not freeVariables(term)


def leafCount(term: Term) -> int:
    if isinstance(term, App):
        return leafCount(term.left) + leafCount(term.right)
    return 1


def atomsOf(term: Term) -> frozenset:
    """
    Returns the atoms occurring in a term, looking inside captured continuations.
    """
    if isinstance(term, Atom):
        return frozenset([term])
    if isinstance(term, App):
        return atomsOf(term.left) | atomsOf(term.right)
    if isinstance(term, Cont):
        atoms = frozenset()
        for item in term.stack:
            atoms |= atomsOf(item)
        if term.cont is not None:
            atoms |= atomsOf(term.cont)
        return atoms
    return frozenset()


def substitute(body: Term, var: str, value: Term) -> Term:
    if isinstance(body, Var):
        return value if body.name == var else body
    if isinstance(body, App):
        return App(substitute(body.left, var, value), substitute(body.right, var, value))
    return body


def abstract(var: str, body: Term) -> Term:
    """
    Bracket abstraction. The result has no free occurrence of `var` and, applied
    to a closed argument, behaves as `body` with `var` replaced by it.
    Args:
        var (str): Name of the variable to abstract.
        body (Term): Term that may mention `Var(var)`.
    Returns:
        Term: `S K K` for the bare variable, `K body` when `var` is not free,
        and `S (λvar.M) (λvar.N)` for an application `M N` otherwise.
    """
    if body == Var(var):
        return app(S, K, K)
    if var not in freeVariables(body):
        return App(K, body)
    return app(S, abstract(var, body.left), abstract(var, body.right))


IDENTITY = abstract("x", Var("x"))


class _Reducer:
    """
    Leftmost-outermost reducer sharing one step budget across a whole run.
    `whnf` stops at the first weak head normal form, `normalize` goes on
    inside the arguments. Both return None once the budget is exhausted.
    """

    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0

    def _fire(self) -> bool:
        if self.steps >= self.budget:
            return False
        self.steps += 1
        return True

    def headNormalize(self, term: Term) -> Optional[Tuple[Term, List[Term]]]:
        head, args = unwind(term)
        while True:
            if head == K and len(args) >= 2:
                if not self._fire():
                    return None
                head, extra = unwind(args[0])
                args = extra + args[2:]
            elif head == S and len(args) >= 3:
                if not self._fire():
                    return None
                a, b, c = args[:3]
                head, extra = unwind(a)
                args = extra + [c, App(b, c)] + args[3:]
            elif head in (FST, SND) and args:
                inner = self.headNormalize(args[0])
                if inner is None:
                    return None
                innerHead, innerArgs = inner
                if innerHead == P and len(innerArgs) == 2:
                    if not self._fire():
                        return None
                    component = innerArgs[0] if head == FST else innerArgs[1]
                    head, extra = unwind(component)
                    args = extra + args[1:]
                else:
                    return head, [app(innerHead, *innerArgs)] + args[1:]
            else:
                return head, args

    def whnf(self, term: Term) -> Optional[Term]:
        spine = self.headNormalize(term)
        if spine is None:
            return None
        head, args = spine
        return app(head, *args)

    def normalize(self, term: Term) -> Optional[Term]:
        spine = self.headNormalize(term)
        if spine is None:
            return None
        head, args = spine
        result = head
        for arg in args:
            value = self.normalize(arg)
            if value is None:
                return None
            result = App(result, value)
        return result


def _requireClosed(term: Term):
    if not isClosed(term):
        raise OpenTermError(f"cannot reduce open term {printTerm(term)}")


def reduce(term: Term, budget: int) -> ReductionOutcome:
    """
    Reduces a closed term with the K, S, FST and SND rules, always contracting
    the head redex, until the term is in weak head normal form or `budget` rule
    firings are used. Arguments are left as they are, so `K (S I I (S I I))`
    is already a value.
    Args:
        term (Term): The closed term to reduce.
        budget (int): The largest number of rule firings allowed.
    Returns:
        ReductionOutcome: The value and the steps used, or no value with
        `steps == budget` when the budget ran out.
    Raises:
        OpenTermError: If the term contains a variable.
    """
    _requireClosed(term)
    reducer = _Reducer(budget)
    value = reducer.whnf(term)
    if value is None:
        return ReductionOutcome(value=None, steps=budget)
    return ReductionOutcome(value=value, steps=reducer.steps)


def normalize(term: Term, budget: int) -> ReductionOutcome:
    """
    Like `reduce`, but once the head is settled the arguments are normalized
    too, left to right, under the same budget. Codes are the results of this.
    Raises:
        OpenTermError: If the term contains a variable.
    """
    _requireClosed(term)
    reducer = _Reducer(budget)
    value = reducer.normalize(term)
    if value is None:
        return ReductionOutcome(value=None, steps=budget)
    return ReductionOutcome(value=value, steps=reducer.steps)


def isValue(term: Term) -> bool:
    """
    True for a term in weak head normal form.
    """
    return _Reducer(0).whnf(term) == term


def isNormal(term: Term) -> bool:
    return _Reducer(0).normalize(term) == term


def isStuckProjection(value: Term) -> bool:
    """
    True for a value whose head is FST or SND applied to a non-pair.
    """
    head, args = unwind(value)
    return head in (FST, SND) and bool(args)


def orderedBasis(basis: Iterable[Union[str, Atom]]) -> Tuple[Atom, ...]:
    atoms = set()
    for item in basis:
        name = item.name if isinstance(item, Atom) else item
        if name not in ATOMS:
            raise UnknownNameError(f"unknown atom {name!r}")
        atoms.add(ATOMS[name])
    return tuple(sorted(atoms, key=lambda atom: BASIS_ORDER.index(atom.name)))


@lru_cache(maxsize=64)
def _enumerate(basis: Tuple[Atom, ...], maxLeaves: int) -> Tuple[Term, ...]:
    bySize = {1: list(basis)}
    for size in range(2, maxLeaves + 1):
        trees = []
        for leftSize in range(1, size):
            for left in bySize[leftSize]:
                for right in bySize[size - leftSize]:
                    trees.append(App(left, right))
        bySize[size] = trees
    return tuple(term for size in range(1, maxLeaves + 1) for term in bySize[size])


def enumerateTerms(basis: Iterable[Union[str, Atom]], maxLeaves: int) -> List[Term]:
    """
    Enumerates closed application trees ordered by leaf count, then by the leaf
    count of the left subtree, then left-major over the two subtrees.
    Args:
        basis (Iterable[str | Atom]): Atoms to use as leaves.
        maxLeaves (int): Largest leaf count, at least 1.
    Returns:
        List[Term]: Every such tree exactly once.
    """
    if maxLeaves < 1:
        raise ValueError("maxLeaves must be at least 1")
    return list(_enumerate(orderedBasis(basis), maxLeaves))


@dataclass(frozen=True)
class CodeUniverse:
    """
    The codes reached by the enumerated terms: the normal form of every term
    that has one within the fuel and is not a stuck projection, each once.
    """

    codes: Tuple[Term, ...]
    enumerated: int
    stuck: int
    unsettled: int

    def describe(self) -> dict:
        return {
            "enumerated": self.enumerated,
            "codes": len(self.codes),
            "stuck": self.stuck,
            "unsettled": self.unsettled,
        }


@lru_cache(maxsize=64)
def _universe(basis: Tuple[Atom, ...], maxLeaves: int, fuel: int) -> CodeUniverse:
    terms = _enumerate(basis, maxLeaves)
    codes, stuck, unsettled = {}, 0, 0
    for term in terms:
        outcome = normalize(term, fuel)
        if not outcome.isValue:
            unsettled += 1
        elif isStuckProjection(outcome.value):
            stuck += 1
        else:
            codes.setdefault(outcome.value, None)
    logger.debug("%d terms give %d codes (%d stuck, %d unsettled)", len(terms), len(codes), stuck, unsettled)
    return CodeUniverse(tuple(codes), len(terms), stuck, unsettled)


def describeUniverse(basis: Iterable[Union[str, Atom]], maxLeaves: int, fuel: int = DEFAULT_UNIVERSE_FUEL) -> CodeUniverse:
    if maxLeaves < 1:
        raise ValueError("maxLeaves must be at least 1")
    return _universe(orderedBasis(basis), maxLeaves, fuel)


def codeUniverse(basis: Iterable[Union[str, Atom]], maxLeaves: int, fuel: int = DEFAULT_UNIVERSE_FUEL) -> List[Term]:
    """
    Normalizes every enumerated term and keeps the distinct normal forms, in
    order of first appearance. Terms without a normal form within `fuel` and
    stuck projections are counted in `describeUniverse` but give no code.
    """
    return list(describeUniverse(basis, maxLeaves, fuel).codes)


_TOKEN = re.compile(r"\s*(?:(?P<open>\()|(?P<close>\))|(?P<atom>[A-Z][A-Z0-9]*)|(?P<var>[a-z][a-z0-9_]*))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    while True:
        while position < len(text) and text[position].isspace():
            position += 1
        if position >= len(text):
            return tokens
        match = _TOKEN.match(text, position)
        if match is None:
            raise TermSyntaxError(f"unexpected character {text[position]!r}", position)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        position = match.end()


def parseTerm(text: str, allowVariables: bool = False) -> Term:
    """
    Parses the term grammar: atoms S K P FST SND CC Z0, juxtaposition as
    left-associative application and parentheses for grouping.
    Args:
        text (str): Term text.
        allowVariables (bool): Accept lowercase identifiers as variables.
    Returns:
        Term: The parsed term.
    Raises:
        TermSyntaxError: On an unknown token, unbalanced parentheses or an
            empty group, carrying the character offset.
    """
    tokens = _tokenize(text)
    index = 0

    def sequence(closing: bool) -> Term:
        nonlocal index
        items = []
        while index < len(tokens) and tokens[index][0] != "close":
            kind, value, position = tokens[index]
            index += 1
            if kind == "open":
                items.append(sequence(closing=True))
            elif kind == "atom":
                if value not in ATOMS:
                    raise TermSyntaxError(f"unknown atom {value!r}", position)
                items.append(ATOMS[value])
            elif allowVariables:
                items.append(Var(value))
            else:
                raise TermSyntaxError(f"unexpected variable {value!r}", position)
        endPosition = tokens[index][2] if index < len(tokens) else len(text)
        if closing:
            if index >= len(tokens):
                raise TermSyntaxError("missing ')'", endPosition)
            index += 1
        if not items:
            raise TermSyntaxError("empty term", endPosition)
        return app(*items)

    term = sequence(closing=False)
    if index < len(tokens):
        raise TermSyntaxError("unbalanced ')'", tokens[index][2])
    return term


def printTerm(term: Term) -> str:
    if isinstance(term, Atom):
        return term.name
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Cont):
        stack = "; ".join(printTerm(item) for item in term.stack)
        cont = printTerm(term.cont) if term.cont is not None else "."
        return f"#[{stack} | {cont}]"
    right = printTerm(term.right)
    if isinstance(term.right, App):
        right = f"({right})"
    return f"{printTerm(term.left)} {right}"
