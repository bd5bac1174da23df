"""
This module resolves the workbench input formats into controller values.
Functions:
    loadJson(path) -> Any:
        Reads a JSON file, reporting failures with the file name.
    resolveAlgebra(reference, location) -> HeytingAlgebra:
        A builtin name or an algebra block.
    resolveFrame(reference, location, bounds) -> EvidencedFrame:
        "heyting NAME", a builtin name, {"heyting": ...}, {"tier": ...} or a
        table frame.
    parseTableFrame(data, location) -> TableFrame
    resolveObject(data, frame, location) -> EftObject
    resolveTopology(reference, frame, location) -> Topology
    parseProposition(text, omega, named) -> Proposition
    parsePropositions(data, omega, location) / loadPropositions(path, omega) -> PropositionFile
    loadSuite(path) -> Suite
Formats:
    Algebra block: {"name": str, "elements": [ids], "order": [[low, high], ...],
    "tables": {"meet" | "join" | "imp": [[a, b, value], ...]}}; missing tables
    are derived from the order.
    Object: {"carrier": [ids], "eq": [[x, y, value], ...], "symmetric": bool}.
    Missing pairs are bottom; with "symmetric" (the default) each entry also
    sets the mirrored pair.
    Topology: "id", "dnn" or {"table": {element: element}}.
    Proposition: "Always", "Never", "=TERM", "reduces: TERM[@BUDGET]",
    "table: TERM=v, TERM=v | default" or "FILE#NAME".
    Table frame: {"propositions": [ids], "evidences": [ids], "relation":
    [[phi, e, psi], ...], "constructs": {"id" | "top" | "fst" | "snd" | "eval": e,
    "compose" | "pair": [[e1, e2, e], ...], "lam": [[e, e], ...]},
    "connectives": {"top": phi, "conj": [[a, b, c], ...], "uimp": [[phi, [psi, ...], value], ...]}}.
"""

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from controller.checkconstants import DEFAULT_UNIVERSE_FUEL
from controller.errors import ResolutionError, UnknownElementError, WorkbenchError
from controller.frame import EvidencedFrame, HeytingFrame, TableFrame, heytingFrame
from controller.heyting import HeytingAlgebra, algebraFromOrder, builtinAlgebra
from controller.machine import ContinuationCore
from controller.mca import Always, EqualsTerm, InducedFrame, Never, PartialCore, Proposition, ReducesTo, Table, inducedFrame
from controller.term import atomsOf, leafCount, parseTerm
from controller.topology import Topology, doubleNegation, identityTopology, tableTopology
from controller.topos import EftObject
from objects.bounds import Bounds
from objects.suite import Suite

logger = logging.getLogger(__name__)

TIERS = ("partial", "cps")


def _fail(message: str, location: str):
    logger.warning("%s: %s", location, message)
    raise ResolutionError(message, location=location)


def loadJson(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as error:
        _fail(f"cannot read file: {error.strerror}", path)
    except json.JSONDecodeError as error:
        _fail(f"invalid JSON at line {error.lineno} column {error.colno}: {error.msg}", path)


def _tableFromRows(rows, location: str) -> Dict[tuple, str]:
    table = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != 3:
            _fail(f"table rows must be [a, b, value], got {row!r}", location)
        table[(row[0], row[1])] = row[2]
    return table


def parseAlgebra(data: Dict[str, Any], location: str) -> HeytingAlgebra:
    """
    Builds and validates an algebra block.
    Raises:
        ResolutionError: If the block is missing fields.
        MalformedAlgebraError: If the result is not a Heyting algebra.
    """
    for key in ("elements", "order"):
        if key not in data:
            _fail(f"algebra block needs {key!r}", location)
    tables = {name: _tableFromRows(rows, f"{location}:{name}") for name, rows in data.get("tables", {}).items()}
    algebra = algebraFromOrder(data.get("name", "custom"), data["elements"], [tuple(pair) for pair in data["order"]], tables)
    heytingFrame(algebra)
    return algebra


def resolveAlgebra(reference: Any, location: str) -> HeytingAlgebra:
    if isinstance(reference, str):
        return builtinAlgebra(reference)
    if isinstance(reference, dict):
        return parseAlgebra(reference, location)
    _fail(f"cannot read an algebra from {reference!r}", location)


@lru_cache(maxsize=16)
def _builtinFrame(name: str) -> HeytingFrame:
    return heytingFrame(builtinAlgebra(name))


def _tierFrame(tier: str, omega: str, bounds: Bounds) -> InducedFrame:
    # fresh per call: cores count steps and memoize runs
    algebra = builtinAlgebra(omega)
    core = PartialCore(algebra, bounds) if tier == "partial" else ContinuationCore(bounds, algebra)
    return inducedFrame(core)


CONSTRUCTS = ("id", "top", "fst", "snd", "eval")


def _ids(data: Dict[str, Any], key: str, location: str) -> List[str]:
    values = data.get(key)
    if not isinstance(values, list) or not values:
        _fail(f"table frame needs a non-empty {key!r} list", location)
    ids = [str(value) for value in values]
    if len(set(ids)) != len(ids):
        _fail(f"{key!r} repeats an id", location)
    return ids


def _member(value: Any, known: List[str], kind: str, location: str) -> str:
    if str(value) not in known:
        _fail(f"unknown {kind} {value!r}", location)
    return str(value)


def _binaryTable(rows: Any, known: List[str], result: List[str], kind: str, location: str) -> Dict[tuple, str]:
    table = {}
    for (left, right), value in _tableFromRows(rows or [], location).items():
        key = (_member(left, known, kind, location), _member(right, known, kind, location))
        table[key] = _member(value, result, kind, location)
    missing = [pair for pair in ((a, b) for a in known for b in known) if pair not in table]
    if missing:
        _fail(f"table misses {missing[0]}", location)
    return table


def parseTableFrame(data: Dict[str, Any], location: str) -> TableFrame:
    """
    Builds a frame from explicit tables. The relation lists the triples
    [φ, e, ψ] that hold; compose and pair are total on E × E, lam on E,
    conj on Φ × Φ and uimp on Φ × subsets of Φ.
    Raises:
        ResolutionError: If an id is unknown, a row is malformed or a table is
            not total.
    """
    propositions = _ids(data, "propositions", location)
    evidences = _ids(data, "evidences", location)
    relation = []
    for row in data.get("relation", []):
        if not isinstance(row, list) or len(row) != 3:
            _fail(f"relation rows must be [phi, e, psi], got {row!r}", f"{location}:relation")
        relation.append(
            (
                _member(row[0], propositions, "proposition", f"{location}:relation"),
                _member(row[1], evidences, "evidence", f"{location}:relation"),
                _member(row[2], propositions, "proposition", f"{location}:relation"),
            )
        )
    constructs = data.get("constructs", {})
    named = {key: _member(constructs.get(key), evidences, "evidence", f"{location}:constructs.{key}") for key in CONSTRUCTS}
    compose = _binaryTable(constructs.get("compose"), evidences, evidences, "evidence", f"{location}:compose")
    pair = _binaryTable(constructs.get("pair"), evidences, evidences, "evidence", f"{location}:pair")
    lam = {}
    for row in constructs.get("lam", []):
        if not isinstance(row, list) or len(row) != 2:
            _fail(f"lam rows must be [e, value], got {row!r}", f"{location}:lam")
        lam[_member(row[0], evidences, "evidence", f"{location}:lam")] = _member(row[1], evidences, "evidence", f"{location}:lam")
    if set(lam) != set(evidences):
        _fail("lam table is not total", f"{location}:lam")
    connectives = data.get("connectives", {})
    top = _member(connectives.get("top"), propositions, "proposition", f"{location}:top")
    conj = _binaryTable(connectives.get("conj"), propositions, propositions, "proposition", f"{location}:conj")
    uimp = {}
    for row in connectives.get("uimp", []):
        if not isinstance(row, list) or len(row) != 3 or not isinstance(row[1], list):
            _fail(f"uimp rows must be [phi, [psi, ...], value], got {row!r}", f"{location}:uimp")
        family = frozenset(_member(psi, propositions, "proposition", f"{location}:uimp") for psi in row[1])
        key = (_member(row[0], propositions, "proposition", f"{location}:uimp"), family)
        uimp[key] = _member(row[2], propositions, "proposition", f"{location}:uimp")
    for phi in propositions:
        for size in range(len(propositions) + 1):
            for family in combinations(propositions, size):
                if (phi, frozenset(family)) not in uimp:
                    _fail(f"uimp table misses ({phi}, {list(family)})", f"{location}:uimp")
    return TableFrame(data.get("name", "table"), propositions, evidences, relation, named, compose, pair, lam, top, conj, uimp)


def resolveFrame(reference: Any, location: str, bounds: Optional[Bounds] = None) -> EvidencedFrame:
    """
    Resolves a frame reference. Builtin finite frames are shared; each tier
    reference gets a new core.
    Raises:
        ResolutionError: If the reference is malformed or a tier frame has no
            bounds.
        UnknownNameError: If a builtin name is unknown.
    """
    if isinstance(reference, str):
        words = reference.split()
        if len(words) == 2 and words[0] == "heyting":
            return _builtinFrame(words[1])
        if len(words) == 1:
            return _builtinFrame(words[0])
        _fail(f"cannot read a frame from {reference!r}", location)
    if isinstance(reference, dict) and "heyting" in reference:
        if isinstance(reference["heyting"], str):
            return _builtinFrame(reference["heyting"])
        return heytingFrame(parseAlgebra(reference["heyting"], location))
    if isinstance(reference, dict) and "tier" in reference:
        if reference["tier"] not in TIERS:
            _fail(f"unknown tier {reference['tier']!r}", location)
        if bounds is None:
            _fail("a tier frame needs bounds", location)
        return _tierFrame(reference["tier"], reference.get("omega", "BOOL2"), bounds)
    if isinstance(reference, dict) and "relation" in reference:
        return parseTableFrame(reference, location)
    _fail(f"cannot read a frame from {reference!r}", location)


def _omegaOf(frame: EvidencedFrame) -> HeytingAlgebra:
    if isinstance(frame, HeytingFrame):
        return frame.algebra
    return frame.core.omega


def _propositionValue(frame: EvidencedFrame, value: Any, location: str):
    if isinstance(frame, TableFrame):
        return _member(value, frame.propositionSample(), "proposition", location)
    if isinstance(frame, HeytingFrame):
        try:
            return frame.algebra.check(value)
        except UnknownElementError as error:
            _fail(str(error), location)
    return parseProposition(value, _omegaOf(frame))


def resolveObject(data: Dict[str, Any], frame: EvidencedFrame, location: str) -> EftObject:
    """
    Reads an object block over `frame`. Entries are element ids on finite
    frames and proposition texts on tier frames.
    Raises:
        ResolutionError: If the carrier is missing, or an entry names a point
            outside it or an unknown value.
    """
    if "carrier" not in data or not isinstance(data["carrier"], list):
        _fail("object needs a 'carrier' list", location)
    carrier = [str(point) for point in data["carrier"]]
    eq = {}
    for (x, y), value in _tableFromRows(data.get("eq", []), location).items():
        if x not in carrier or y not in carrier:
            _fail(f"eq entry ({x}, {y}) is outside the carrier", location)
        resolved = _propositionValue(frame, value, location)
        eq[(x, y)] = resolved
        if data.get("symmetric", True):
            eq[(y, x)] = resolved
    return EftObject(frame, carrier, eq, name=data.get("name", Path(location).stem or "object"))


def resolveTopology(reference: Any, frame: EvidencedFrame, location: str) -> Topology:
    if reference == "id":
        return identityTopology(frame)
    if reference == "dnn":
        return doubleNegation(frame)
    if isinstance(reference, dict) and "table" in reference:
        return tableTopology(frame, reference["table"], name=reference.get("name", "table"))
    _fail(f"cannot read a topology from {reference!r}", location)


def parseProposition(text: str, omega: HeytingAlgebra, named: Optional[Dict[str, Proposition]] = None) -> Proposition:
    """
    Reads "Always", "Never", "=TERM", "reduces: TERM[@BUDGET]",
    "table: TERM=v, TERM=v | default", a name from `named`, or "FILE#NAME"
    naming a proposition of a proposition file.
    Raises:
        ResolutionError: On any other text.
        TermSyntaxError: If a term does not parse.
    """
    text = text.strip()
    if named and text in named:
        return named[text]
    if text == "Always":
        return Always()
    if text == "Never":
        return Never()
    if text.startswith("="):
        return EqualsTerm(parseTerm(text[1:]))
    if text.startswith("reduces:"):
        term, separator, budget = text[len("reduces:"):].partition("@")
        if separator and not budget.strip().isdigit():
            _fail(f"reduction budget {budget.strip()!r} is not a number", "proposition")
        return ReducesTo(parseTerm(term), int(budget) if separator else DEFAULT_UNIVERSE_FUEL)
    if text.startswith("table:"):
        body, _, default = text[len("table:"):].partition("|")
        entries = {}
        for item in filter(None, (part.strip() for part in body.split(","))):
            term, separator, value = item.rpartition("=")
            if not separator:
                _fail(f"table entry {item!r} has no '='", "proposition")
            entries[parseTerm(term)] = omega.check(value.strip())
        return Table.fromMapping(entries, omega.check(default.strip() or omega.bottom))
    path, separator, name = text.rpartition("#")
    if separator and path:
        propositions = loadPropositions(path, omega).propositions
        if name not in propositions:
            _fail(f"no proposition named {name!r}", path)
        return propositions[name]
    _fail(f"cannot read a proposition from {text!r}", "proposition")


@dataclass(frozen=True)
class PropositionFile:
    bounds: Dict[str, Any]
    propositions: Dict[str, Proposition]


def _checkedTerm(text: str, block: Dict[str, Any], location: str):
    term = parseTerm(text)
    foreign = sorted(atom.name for atom in atomsOf(term) if atom.name not in block["basis"])
    if foreign:
        _fail(f"term {text!r} uses {foreign} outside the basis {block['basis']}", location)
    if leafCount(term) > block["maxLeaves"]:
        _fail(f"term {text!r} has more than {block['maxLeaves']} leaves", location)
    return term


def parsePropositions(data: Dict[str, Any], omega: HeytingAlgebra, location: str) -> PropositionFile:
    """
    Reads a proposition file: an optional "omega" name, a bounds block
    {"basis": [atoms], "maxLeaves": int, "fuel": int} and a list of named
    propositions {"name", "kind", ...} with kind "always", "never",
    "equals" ("term"), "reduces" ("term", optional "budget") or "table"
    ("entries": {term: element}, optional "default"). Table terms must lie
    inside the bounds block.
    Raises:
        ResolutionError: If the file does not match `omega`, the bounds block
            is incomplete, a name repeats or an entry is malformed.
    """
    if data.get("omega", omega.name) != omega.name:
        _fail(f"propositions are valued in {data['omega']}, not {omega.name}", location)
    block = data.get("bounds")
    if not isinstance(block, dict) or any(key not in block for key in ("basis", "maxLeaves", "fuel")):
        _fail("proposition file needs a bounds block with basis, maxLeaves and fuel", location)
    propositions: Dict[str, Proposition] = {}
    for entry in data.get("propositions", []):
        name, kind = entry.get("name"), entry.get("kind")
        where = f"{location}:{name}"
        if not name or name in propositions:
            _fail(f"proposition names must be present and distinct, got {name!r}", location)
        try:
            if kind == "always":
                propositions[name] = Always()
            elif kind == "never":
                propositions[name] = Never()
            elif kind == "equals":
                propositions[name] = EqualsTerm(_checkedTerm(entry["term"], block, where))
            elif kind == "reduces":
                propositions[name] = ReducesTo(_checkedTerm(entry["term"], block, where), int(entry.get("budget", block["fuel"])))
            elif kind == "table":
                entries = {_checkedTerm(term, block, where): omega.check(value) for term, value in entry["entries"].items()}
                propositions[name] = Table.fromMapping(entries, omega.check(entry.get("default", omega.bottom)))
            else:
                _fail(f"unknown proposition kind {kind!r}", where)
        except KeyError as error:
            _fail(f"missing field {error.args[0]!r}", where)
        except UnknownElementError as error:
            _fail(str(error), where)
    return PropositionFile(bounds=dict(block), propositions=propositions)


def loadPropositions(path: str, omega: HeytingAlgebra) -> PropositionFile:
    return parsePropositions(loadJson(path), omega, path)


def loadSuite(path: str) -> Suite:
    """
    Reads and validates a suite file.
    Raises:
        ResolutionError: If the file cannot be read or does not describe a suite.
    """
    data = loadJson(path)
    try:
        return Suite.model_validate(data)
    except ValidationError as error:
        first = error.errors()[0]
        _fail(f"{'.'.join(map(str, first['loc']))}: {first['msg']}", path)


def describeError(error: WorkbenchError) -> str:
    return f"{type(error).__name__}: {error}"
