"""
This module runs suites of checks and explains their results.
Every check of a suite is resolved (bounds parsed, frames, objects, topologies
and propositions read) before any check runs; the checks then run in a thread
pool and the report keeps suite order.
Classes:
    PreparedCheck:
        A resolved check, ready to run.
Functions:
    prepareCheck(spec, location) -> PreparedCheck
    runSuite(suite, workers, allowInconclusive) -> SuiteReport
    exitStatus(lines, allowInconclusive) -> int
    explain(checkId, lines) -> str
    writeReport(report, path) / readReport(path) -> SuiteReport
    builtinSuite(name) -> Suite
"""

import json
import logging
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Dict, List, Sequence

from controller.checkconstants import DEFAULT_WORKERS, LAW_NATURALITY
from controller.errors import ResolutionError, UnknownNameError
from controller.frame import HeytingFrame, validateFrame
from controller.heyting import validateAlgebra, validateDoubleNegation
from controller.loader import parseProposition, resolveAlgebra, resolveFrame, resolveObject, resolveTopology
from controller.machine import checkDne, checkMachineEquations, continuationPool, liftFrame, liftK1Evidence
from controller.mca import InducedFrame, MonadicCore, checkAfterReturn, checkEvidence
from controller.term import codeUniverse, parseTerm
from controller.topology import (
    ROWS,
    checkJDistribution,
    checkSeparated,
    checkSheaf,
    densityCampaign,
    leqCampaign,
    oracleCampaign,
    oracleCompare,
    sheafOracle,
    validateTopology,
)
from controller.topos import characteristicRoundTrip, validateObject
from controller.tripos import checkAdjunctions, checkBeckChevalley
from objects.bounds import Bounds
from objects.report import ReportHeader, ReportLine, SuiteReport
from objects.result import CheckResult, Verdict
from objects.suite import CheckSpec, Suite

logger = logging.getLogger(__name__)

Thunk = Callable[[], CheckResult]


@dataclass
class PreparedCheck:
    spec: CheckSpec
    run: Thunk


def _need(spec: CheckSpec, field: str, location: str):
    value = getattr(spec, field)
    if value is None:
        logger.warning("%s: missing %r", location, field)
        raise ResolutionError(f"operation {spec.operation} needs {field!r}", location=location)
    return value


def _frame(spec: CheckSpec, bounds: Bounds, location: str):
    return resolveFrame(_need(spec, "frame", location), location, bounds)


def _core(spec: CheckSpec, bounds: Bounds, location: str, tier: str) -> MonadicCore:
    frame = resolveFrame(spec.frame or {"tier": tier}, location, bounds)
    if not isinstance(frame, InducedFrame):
        raise ResolutionError(f"operation {spec.operation} needs a tier frame", location=location)
    return frame.core


def _finiteFrame(spec: CheckSpec, bounds: Bounds, location: str) -> HeytingFrame:
    frame = _frame(spec, bounds, location)
    if not isinstance(frame, HeytingFrame):
        raise ResolutionError(f"operation {spec.operation} needs a finite frame", location=location)
    return frame


def _objectAndTopology(spec: CheckSpec, bounds: Bounds, location: str):
    frame = _frame(spec, bounds, location)
    obj = resolveObject(_need(spec, "object", location), frame, location)
    return obj, resolveTopology(_need(spec, "topology", location), frame, location)


def _validateAlgebra(spec, bounds, location) -> Thunk:
    algebra = resolveAlgebra(_need(spec, "algebra", location), location)
    return lambda: validateAlgebra(algebra)


def _validateDoubleNegation(spec, bounds, location) -> Thunk:
    algebra = resolveAlgebra(_need(spec, "algebra", location), location)
    return lambda: validateDoubleNegation(algebra)


def _validateFrame(spec, bounds, location) -> Thunk:
    frame = _frame(spec, bounds, location)
    return lambda: validateFrame(frame, bounds)


def _validateObject(spec, bounds, location) -> Thunk:
    frame = _frame(spec, bounds, location)
    obj = resolveObject(_need(spec, "object", location), frame, location)
    return lambda: validateObject(obj)


def _propositionsFor(spec: CheckSpec, frame):
    if spec.propositions is None:
        return None
    if isinstance(frame, HeytingFrame):
        return [frame.algebra.check(text) for text in spec.propositions]
    return [parseProposition(text, frame.core.omega) for text in spec.propositions]


def _validateTopology(spec, bounds, location) -> Thunk:
    frame = _frame(spec, bounds, location)
    j = resolveTopology(_need(spec, "topology", location), frame, location)
    rows = tuple(spec.rows or ROWS)
    unknown = [row for row in rows if row not in ROWS]
    if unknown:
        raise ResolutionError(f"unknown topology rows {unknown}", location=location)
    propositions = _propositionsFor(spec, frame)
    return lambda: validateTopology(j, propositions, rows)


def _checkJDistribution(spec, bounds, location) -> Thunk:
    frame = _frame(spec, bounds, location)
    j = resolveTopology(_need(spec, "topology", location), frame, location)
    propositions = _propositionsFor(spec, frame)
    return lambda: checkJDistribution(j, propositions)


def _checkSeparated(spec, bounds, location) -> Thunk:
    obj, j = _objectAndTopology(spec, bounds, location)
    return lambda: checkSeparated(j, obj)


def _checkSheaf(spec, bounds, location) -> Thunk:
    obj, j = _objectAndTopology(spec, bounds, location)
    return lambda: checkSheaf(j, obj, carrierLimit=bounds.carrierLimit)


def _sheafOracle(spec, bounds, location) -> Thunk:
    obj, j = _objectAndTopology(spec, bounds, location)
    return lambda: sheafOracle(j, obj, bounds.carrierLimit)


def _oracleCompare(spec, bounds, location) -> Thunk:
    obj, j = _objectAndTopology(spec, bounds, location)
    return lambda: oracleCompare(j, obj, bounds.carrierLimit)


def _oracleCampaign(spec, bounds, location) -> Thunk:
    frame = _finiteFrame(spec, bounds, location)
    j = resolveTopology(_need(spec, "topology", location), frame, location)
    size = _need(spec, "size", location)
    return lambda: oracleCampaign(j, size, bounds.carrierLimit)


def _densityCampaign(spec, bounds, location) -> Thunk:
    frame = _finiteFrame(spec, bounds, location)
    j = resolveTopology(_need(spec, "topology", location), frame, location)
    size = _need(spec, "size", location)
    return lambda: densityCampaign(j, size)


def _leqCampaign(spec, bounds, location) -> Thunk:
    frame = _finiteFrame(spec, bounds, location)
    size = _need(spec, "size", location)
    return lambda: leqCampaign(frame, size)


def _checkAdjunctions(spec, bounds, location) -> Thunk:
    frame = _finiteFrame(spec, bounds, location)
    size = _need(spec, "size", location)
    return lambda: checkAdjunctions(frame, size)


def _checkBeckChevalley(spec, bounds, location) -> Thunk:
    frame = _finiteFrame(spec, bounds, location)
    size = _need(spec, "size", location)
    return lambda: checkBeckChevalley(frame, size)


def _checkDne(spec, bounds, location) -> Thunk:
    core = _core(spec, bounds, location, "cps")
    prop = parseProposition(_need(spec, "proposition", location), core.omega)
    return lambda: checkDne(core, prop)


def _checkAfterReturn(spec, bounds, location) -> Thunk:
    core = _core(spec, bounds, location, "cps")
    props = [parseProposition(text, core.omega) for text in _need(spec, "propositions", location)]
    return lambda: checkAfterReturn(core, props)


def _checkEvidence(spec, bounds, location) -> Thunk:
    core = _core(spec, bounds, location, "partial")
    evidence = parseTerm(_need(spec, "evidence", location))
    phi = parseProposition(_need(spec, "phi", location), core.omega)
    psi = parseProposition(_need(spec, "psi", location), core.omega)
    return lambda: checkEvidence(core, evidence, phi, psi)


def _lift(spec, bounds, location) -> Thunk:
    partial = resolveFrame({"tier": "partial"}, location, bounds).core
    cps = resolveFrame({"tier": "cps"}, location, bounds).core
    evidence = parseTerm(_need(spec, "evidence", location))
    phi = parseProposition(_need(spec, "phi", location), partial.omega)
    psi = parseProposition(_need(spec, "psi", location), partial.omega)
    return lambda: liftK1Evidence(partial, cps, evidence, phi, psi)


def _liftFrame(spec, bounds, location) -> Thunk:
    partial = resolveFrame({"tier": "partial"}, location, bounds).core
    cps = resolveFrame({"tier": "cps"}, location, bounds).core
    return lambda: liftFrame(partial, cps, bounds)


def _checkCharacteristic(spec, bounds, location) -> Thunk:
    core = _core(spec, bounds, location, "partial")
    props = [parseProposition(text, core.omega) for text in _need(spec, "propositions", location)]
    return lambda: CheckResult.combine(LAW_NATURALITY, [characteristicRoundTrip(core, prop) for prop in props])


def _checkMachineEquations(spec, bounds, location) -> Thunk:
    universe = codeUniverse(bounds.basis, bounds.maxLeaves)
    pool = continuationPool(bounds)
    depth = spec.size if spec.size is not None else 2
    return lambda: checkMachineEquations(universe, pool, bounds.fuel, depth)


OPERATIONS: Dict[str, Callable[[CheckSpec, Bounds, str], Thunk]] = {
    "validate-algebra": _validateAlgebra,
    "validate-double-negation": _validateDoubleNegation,
    "validate-frame": _validateFrame,
    "validate-object": _validateObject,
    "validate-topology": _validateTopology,
    "check-j-distribution": _checkJDistribution,
    "check-separated": _checkSeparated,
    "check-sheaf": _checkSheaf,
    "sheaf-oracle": _sheafOracle,
    "oracle-compare": _oracleCompare,
    "oracle-campaign": _oracleCampaign,
    "density-campaign": _densityCampaign,
    "leq-campaign": _leqCampaign,
    "check-adjunctions": _checkAdjunctions,
    "check-beck-chevalley": _checkBeckChevalley,
    "check-dne": _checkDne,
    "check-after-return": _checkAfterReturn,
    "check-evidence": _checkEvidence,
    "lift": _lift,
    "lift-frame": _liftFrame,
    "check-machine-equations": _checkMachineEquations,
    "check-characteristic": _checkCharacteristic,
}


def prepareCheck(spec: CheckSpec, location: str) -> PreparedCheck:
    """
    Resolves the references of one check.
    Raises:
        ResolutionError: If the operation is unknown, the bounds do not parse or
            a reference does not resolve.
    """
    if spec.operation not in OPERATIONS:
        logger.warning("%s: unknown operation %r", location, spec.operation)
        raise ResolutionError(f"unknown operation {spec.operation!r}", location=location)
    bounds = Bounds.fromText(spec.bounds)
    return PreparedCheck(spec, OPERATIONS[spec.operation](spec, bounds, location))


def _timed(check: PreparedCheck):
    started = time.perf_counter()
    result = check.run()
    return result, time.perf_counter() - started


def exitStatus(lines: Sequence[ReportLine], allowInconclusive: bool = False) -> int:
    """
    0 when every line matched, 1 when a mismatch is not Inconclusive, else 2
    (0 with `allowInconclusive`).
    """
    failures = [line for line in lines if not line.matched]
    if any(line.verdict != Verdict.INCONCLUSIVE for line in failures):
        return 1
    if failures and not allowInconclusive:
        return 2
    return 0


def runSuite(suite: Suite, workers: int = DEFAULT_WORKERS, allowInconclusive: bool = False) -> SuiteReport:
    """
    Resolves every check, runs them in a pool of `workers` threads and
    assembles the report in suite order.
    Raises:
        ResolutionError: If a check id repeats or a reference does not resolve.
    """
    seen = set()
    for spec in suite.checks:
        if spec.id in seen:
            raise ResolutionError(f"duplicate check id {spec.id!r}", location=suite.name)
        seen.add(spec.id)
    prepared = [prepareCheck(spec, f"{suite.name}:{spec.id}") for spec in suite.checks]
    startedAt = datetime.now(timezone.utc).isoformat()
    logger.info("running suite %s with %d checks on %d workers", suite.name, len(prepared), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(_timed, prepared))
    lines = [
        ReportLine.fromResult(check.spec.id, check.spec.operation, result, check.spec.expect)
        for check, (result, _) in zip(prepared, outcomes)
    ]
    header = ReportHeader(
        suite=suite.name,
        runId=uuid.uuid4().hex,
        startedAt=startedAt,
        wallTimes={check.spec.id: round(elapsed, 6) for check, (_, elapsed) in zip(prepared, outcomes)},
    )
    return SuiteReport(header=header, lines=lines, exitStatus=exitStatus(lines, allowInconclusive))


def _dumpLine(line: ReportLine) -> str:
    return json.dumps(line.model_dump(mode="json"), ensure_ascii=False, default=str)


def renderReport(report: SuiteReport) -> str:
    rows = [json.dumps(report.header.model_dump(mode="json"), ensure_ascii=False)]
    rows.extend(_dumpLine(line) for line in report.lines)
    return "\n".join(rows) + "\n"


def writeReport(report: SuiteReport, path: str):
    Path(path).write_text(renderReport(report), encoding="utf-8")


def readReport(path: str) -> SuiteReport:
    """
    Reads a report written by `writeReport`.
    Raises:
        ResolutionError: If the file is missing or malformed.
    """
    try:
        rows = Path(path).read_text(encoding="utf-8").splitlines()
        header = ReportHeader.model_validate(json.loads(rows[0]))
        lines = [ReportLine.model_validate(json.loads(row)) for row in rows[1:] if row.strip()]
    except (OSError, IndexError, ValueError) as error:
        logger.warning("cannot read report %s: %s", path, error)
        raise ResolutionError(f"cannot read report: {error}", location=path) from error
    return SuiteReport(header=header, lines=lines, exitStatus=exitStatus(lines))


def explain(checkId: str, lines: Sequence[ReportLine]) -> str:
    """
    Renders one report line: verdict and law, bounds, the witness entries in
    order, and the machine trace when there is one.
    Raises:
        UnknownNameError: If no line has this id.
    """
    line = next((candidate for candidate in lines if candidate.checkId == checkId), None)
    if line is None:
        raise UnknownNameError(f"no check with id {checkId!r} in the report")
    text = [f"check {line.checkId} ({line.operation}): {line.verdict.value} at {line.law}"]
    if line.expected is not None:
        text.append(f"expected: {line.expected.value}")
    if line.bounds:
        text.append("bounds: " + json.dumps(line.bounds, sort_keys=True, default=str))
    if line.witness:
        text.append("witness:")
        text.extend(f"  {key} = {_render(value)}" for key, value in line.witness.items())
    if line.trace:
        text.append("trace:")
        text.extend(f"  {row}" for row in line.trace)
    return "\n".join(text)


def _render(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, default=str)
    return str(value)


# builtin suites

BUILTIN_ALGEBRAS = ("BOOL2", "CHAIN3", "DIAMOND4")
FINITE_BOUNDS = "S,K:1:0:1:4:3"
DESK_BOUNDS = "S,K:2:2000:2:2:1"
TIER_FRAME_BOUNDS = "S,K:4:10000:2:1:1"
LIFT_BOUNDS = "S,K:3:2000:2:2:1"
DNE_BOUNDS = "S,K:3:10000:3:2:1"


def _finiteOracleSuite() -> Suite:
    checks: List[CheckSpec] = []
    for name in BUILTIN_ALGEBRAS:
        frame = f"heyting {name}"
        checks.append(CheckSpec(id=f"{name}-algebra", operation="validate-algebra", bounds=FINITE_BOUNDS, algebra=name))
        checks.append(
            CheckSpec(id=f"{name}-dnn-shadow", operation="validate-double-negation", bounds=FINITE_BOUNDS, algebra=name)
        )
        checks.append(CheckSpec(id=f"{name}-frame", operation="validate-frame", bounds=FINITE_BOUNDS, frame=frame))
        for topology in ("id", "dnn"):
            checks.append(
                CheckSpec(
                    id=f"{name}-{topology}-topology",
                    operation="validate-topology",
                    bounds=FINITE_BOUNDS,
                    frame=frame,
                    topology=topology,
                )
            )
            checks.append(
                CheckSpec(
                    id=f"{name}-{topology}-oracle",
                    operation="oracle-campaign",
                    bounds=FINITE_BOUNDS,
                    frame=frame,
                    topology=topology,
                    size=3,
                )
            )
        checks.append(
            CheckSpec(
                id=f"{name}-j-distribution",
                operation="check-j-distribution",
                bounds=FINITE_BOUNDS,
                frame=frame,
                topology="dnn",
            )
        )
        checks.append(
            CheckSpec(id=f"{name}-adjunctions", operation="check-adjunctions", bounds=FINITE_BOUNDS, frame=frame, size=4)
        )
        checks.append(
            CheckSpec(
                id=f"{name}-beck-chevalley", operation="check-beck-chevalley", bounds=FINITE_BOUNDS, frame=frame, size=3
            )
        )
    return Suite(name="finite-oracle", checks=checks)


DESK_PROPOSITIONS = (
    "Always",
    "Never",
    "=K",
    "=S",
    "table: K=1, S=1 | 0",
    "table: K K=1 | 0",
)

DNE_TABLES = (
    "table: K=1 | 0",
    "table: S=1 | 0",
    "table: S S=1 | 0",
    "table: S K=1 | 0",
    "table: K S=1 | 0",
    "table: K K=1 | 0",
    "table: S K K=1 | 0",
    "table: S S S=1 | 0",
    "table: K (K K)=1 | 0",
    "table: S (K S)=1 | 0",
    "table: K=1, S=1 | 0",
    "table: S K=1, K S=1 | 0",
    "table: K K=1, S K K=1, S S=1 | 0",
    "table: K (S K)=1, S (K K)=1 | 0",
    "table: S K S=1, S S K=1 | 0",
    "table: S=1, K=1, S K=1, K K=1 | 0",
    "table: K=0 | 1",
    "table: S=0 | 1",
    "table: K=0, S=0 | 1",
    "table: S K K=0 | 1",
    "table: K=0, K K=0, K (K K)=0 | 1",
    "table: K=0 | 0",
)


def _deskLemmasSuite() -> Suite:
    checks = [
        CheckSpec(id="machine-equations", operation="check-machine-equations", bounds="S,K:2:1000:2:2:1", size=1),
        CheckSpec(
            id="after-return",
            operation="check-after-return",
            bounds=DESK_BOUNDS,
            frame={"tier": "cps"},
            propositions=list(DESK_PROPOSITIONS),
        ),
        CheckSpec(
            id="partial-dne-fails",
            operation="check-dne",
            bounds=DESK_BOUNDS,
            frame={"tier": "partial"},
            proposition="=K",
            expect=Verdict.COUNTEREXAMPLE,
        ),
        CheckSpec(
            id="characteristic",
            operation="check-characteristic",
            bounds=DESK_BOUNDS,
            frame={"tier": "partial"},
            propositions=list(DESK_PROPOSITIONS),
        ),
        CheckSpec(
            id="lift-identity",
            operation="lift",
            bounds=DESK_BOUNDS,
            evidence="S K K",
            phi="=K",
            psi="=K",
        ),
        CheckSpec(id="lift-frame", operation="lift-frame", bounds=LIFT_BOUNDS),
    ]
    checks.extend(
        CheckSpec(id=f"{tier}-frame", operation="validate-frame", bounds=TIER_FRAME_BOUNDS, frame={"tier": tier})
        for tier in ("partial", "cps")
    )
    checks.extend(
        CheckSpec(
            id=f"dne-{index}",
            operation="check-dne",
            bounds=DNE_BOUNDS,
            frame={"tier": "cps"},
            proposition=text,
        )
        for index, text in enumerate(DESK_PROPOSITIONS[:4] + DNE_TABLES)
    )
    return Suite(name="desk-lemmas", checks=checks)


BUILTIN_SUITES: Dict[str, Callable[[], Suite]] = {
    "finite-oracle": _finiteOracleSuite,
    "desk-lemmas": _deskLemmasSuite,
}


def builtinSuite(name: str) -> Suite:
    if name not in BUILTIN_SUITES:
        raise UnknownNameError(f"unknown builtin suite {name!r}")
    return BUILTIN_SUITES[name]()
