"""
Unit Tests for the Suite Runner

Functions:
    test_exitStatus: Mismatches decide the exit status.
    test_runSuite: Checks run in a pool and are reported in suite order.
    test_runSuite_resolution: Bad references fail before any check runs.
    test_writeReport: Reports survive a write and read.
    test_explain: One report line rendered for a reader.
    test_builtinSuite: The builtin suites by name.
"""

import pytest

from controller.checkconstants import LAW_INC, LAW_RESIDUATION, LAW_SEP
from controller.errors import ResolutionError, UnknownNameError
from controller.suite import (
    builtinSuite,
    exitStatus,
    explain,
    readReport,
    renderReport,
    runSuite,
    writeReport,
)
from objects.bounds import Bounds
from objects.report import ReportLine
from objects.result import CheckResult, Verdict
from objects.suite import CheckSpec, Suite

FINITE = "S,K:1:0:1:4:1"
OMEGA = "S (S K K) (S K K) (S (S K K) (S K K))"
GLUED = {"carrier": ["x", "y"], "eq": [["x", "x", "1"], ["y", "y", "1"], ["x", "y", "h"]]}


def createLine(checkId: str, verdict: Verdict, expected: Verdict | None = None) -> ReportLine:
    return ReportLine.fromResult(checkId, "validate-frame", CheckResult(verdict=verdict, law="law"), expected)


def algebraCheck(checkId: str = "algebra") -> CheckSpec:
    return CheckSpec(id=checkId, operation="validate-algebra", bounds=FINITE, algebra="CHAIN3")


def zeroTopologyCheck() -> CheckSpec:
    return CheckSpec(
        id="zero",
        operation="validate-topology",
        bounds=FINITE,
        frame="heyting CHAIN3",
        topology={"table": {"0": "0", "h": "0", "1": "0"}},
        expect=Verdict.COUNTEREXAMPLE,
    )


def separatedCheck() -> CheckSpec:
    return CheckSpec(
        id="sep", operation="check-separated", bounds=FINITE, frame="heyting CHAIN3", object=GLUED, topology="dnn"
    )


def divergentEvidenceCheck() -> CheckSpec:
    return CheckSpec(
        id="diverges",
        operation="check-evidence",
        bounds="S,K:1:100:1",
        frame={"tier": "partial"},
        evidence=f"K ({OMEGA})",
        phi="Always",
        psi="Always",
    )


def test_exitStatus():
    """
    GIVEN report lines with and without expectations
    WHEN the exit status is computed
    THEN a non-Inconclusive mismatch gives 1 and Inconclusive mismatches give 2
    """
    verified = createLine("a", Verdict.VERIFIED)
    expected = createLine("b", Verdict.COUNTEREXAMPLE, Verdict.COUNTEREXAMPLE)
    unexpected = createLine("c", Verdict.COUNTEREXAMPLE)
    pending = createLine("d", Verdict.INCONCLUSIVE)
    assert expected.matched and not unexpected.matched
    assert exitStatus([verified, expected]) == 0
    assert exitStatus([verified, pending]) == 2
    assert exitStatus([verified, pending], allowInconclusive=True) == 0
    assert exitStatus([pending, unexpected], allowInconclusive=True) == 1
    assert exitStatus([createLine("e", Verdict.VERIFIED, Verdict.COUNTEREXAMPLE)]) == 1


def test_runSuite():
    """
    GIVEN a valid algebra and a constant table expected to fail as a topology
    WHEN the suite runs on two workers
    THEN both lines match and appear in suite order
    """
    suite = Suite(name="small", checks=[algebraCheck(), zeroTopologyCheck()])
    report = runSuite(suite, workers=2)
    assert [line.checkId for line in report.lines] == ["algebra", "zero"]
    assert report.lines[0].law == LAW_RESIDUATION
    assert report.lines[1].verdict == Verdict.COUNTEREXAMPLE
    assert report.lines[1].law == LAW_INC
    assert all(line.matched for line in report.lines)
    assert report.exitStatus == 0
    assert report.header.suite == "small"
    assert set(report.header.wallTimes) == {"algebra", "zero"}


def test_runSuite_unexpectedCounterexample():
    report = runSuite(Suite(name="small", checks=[algebraCheck(), separatedCheck()]))
    assert report.lines[1].law == LAW_SEP
    assert not report.lines[1].matched
    assert report.exitStatus == 1


def test_runSuite_inconclusive():
    """
    GIVEN evidence that diverges under a small fuel budget
    WHEN the suite runs
    THEN the run exits 2, or 0 when Inconclusive verdicts are allowed
    """
    suite = Suite(name="small", checks=[divergentEvidenceCheck()])
    assert runSuite(suite).exitStatus == 2
    report = runSuite(suite, allowInconclusive=True)
    assert report.lines[0].verdict == Verdict.INCONCLUSIVE
    assert report.exitStatus == 0


def test_runSuite_resolution():
    with pytest.raises(ResolutionError, match="duplicate check id"):
        runSuite(Suite(name="small", checks=[algebraCheck(), algebraCheck()]))
    unknown = CheckSpec(id="x", operation="validate-everything", bounds=FINITE)
    with pytest.raises(ResolutionError, match="unknown operation"):
        runSuite(Suite(name="small", checks=[algebraCheck(), unknown]))
    missing = CheckSpec(id="x", operation="check-separated", bounds=FINITE, frame="heyting CHAIN3", topology="dnn")
    with pytest.raises(ResolutionError) as error:
        runSuite(Suite(name="small", checks=[missing]))
    assert error.value.location == "small:x"
    assert "needs 'object'" in str(error.value)


def test_runSuite_badBounds():
    check = CheckSpec(id="x", operation="validate-algebra", bounds="S,K:one:0:1", algebra="BOOL2")
    with pytest.raises(ResolutionError):
        runSuite(Suite(name="small", checks=[check]))


def test_writeReport(tmp_path):
    """
    GIVEN a finished run
    WHEN its report is written and read back
    THEN the header and lines are unchanged
    """
    report = runSuite(Suite(name="small", checks=[algebraCheck(), separatedCheck()]))
    path = tmp_path / "report.jsonl"
    writeReport(report, str(path))
    assert len(renderReport(report).splitlines()) == 3
    loaded = readReport(str(path))
    assert loaded.header == report.header
    assert [(line.checkId, line.verdict, line.matched) for line in loaded.lines] == [
        (line.checkId, line.verdict, line.matched) for line in report.lines
    ]
    assert loaded.lines[1].witness["a"] == "x"
    assert loaded.exitStatus == 1


def test_readReport_invalid(tmp_path):
    path = tmp_path / "report.jsonl"
    path.write_text("not json\n", encoding="utf-8")
    with pytest.raises(ResolutionError):
        readReport(str(path))
    with pytest.raises(ResolutionError):
        readReport(str(tmp_path / "missing.jsonl"))


def test_explain():
    report = runSuite(Suite(name="small", checks=[zeroTopologyCheck(), separatedCheck()]))
    text = explain("sep", report.lines).splitlines()
    assert text[0] == "check sep (check-separated): COUNTEREXAMPLE at sep"
    assert "witness:" in text
    assert "  a = x" in text
    assert "  b = y" in text
    expected = explain("zero", report.lines).splitlines()
    assert expected[1] == "expected: COUNTEREXAMPLE"
    with pytest.raises(UnknownNameError):
        explain("missing", report.lines)


def test_builtinSuite():
    """
    GIVEN the builtin suite names
    WHEN the suites are built
    THEN the oracle campaigns reach carriers of three points on every builtin
    frame and both topologies, and the desk lemmas cover the tier frames, the
    frame lift and more than twenty table propositions
    """
    oracle = builtinSuite("finite-oracle")
    ids = [check.id for check in oracle.checks]
    assert "CHAIN3-algebra" in ids
    assert "DIAMOND4-dnn-oracle" in ids
    assert len(ids) == len(set(ids))
    campaigns = [check for check in oracle.checks if check.operation == "oracle-campaign"]
    assert len(campaigns) == 6
    assert all(check.size == 3 and Bounds.fromText(check.bounds).carrierLimit == 3 for check in campaigns)
    sizes = {(check.operation, check.size) for check in oracle.checks if check.operation.startswith("check-")}
    assert {("check-adjunctions", 4), ("check-beck-chevalley", 3)} <= sizes

    desk = builtinSuite("desk-lemmas")
    deskIds = [check.id for check in desk.checks]
    assert deskIds[:3] == ["machine-equations", "after-return", "partial-dne-fails"]
    assert {"characteristic", "lift-identity", "lift-frame", "partial-frame", "cps-frame", "dne-0", "dne-5"} <= set(deskIds)
    tables = [
        check
        for check in desk.checks
        if check.operation == "check-dne" and check.proposition.startswith("table:") and check.expect is None
    ]
    assert len(tables) >= 20
    assert all(Bounds.fromText(check.bounds).key()[1:4] == (3, 10000, 3) for check in tables)
    with pytest.raises(UnknownNameError):
        builtinSuite("everything")


def test_runSuite_characteristic():
    check = CheckSpec(
        id="ch",
        operation="check-characteristic",
        bounds="S,K:2:200:1",
        frame={"tier": "partial"},
        propositions=["Always", "Never", "=K", "table: K K=1 | 0"],
    )
    report = runSuite(Suite(name="small", checks=[check]))
    assert report.lines[0].verdict == Verdict.VERIFIED
    assert report.exitStatus == 0
