"""
This module defines the report records of suite runs and the stored form that
`explain` reads back.
Classes:
    - ReportLine: One check of a run, with a stable field order.
    - ReportHeader: Run metadata; everything that varies between identical runs
      (run id, start time, wall times) lives here.
    - SuiteReport: Header, lines and exit status of a run.
    - CheckRecordBase: Stored fields of a check.
    - CheckRecord: The `CheckRecord` database model.
    - SuitePOSTRequest: Request to run an inline or builtin suite.
    - ExplainGETResponse: Text of an explanation.
"""

import json
from typing import Any, Dict, List
from sqlmodel import Field, SQLModel

from objects.result import CheckResult, Verdict
from objects.suite import Suite


class ReportLine(SQLModel):
    checkId: str
    operation: str
    verdict: Verdict
    law: str
    expected: Verdict | None = None
    matched: bool
    steps: int = 0
    bounds: Dict[str, Any] | None = None
    witness: Dict[str, Any] = Field(default_factory=dict)
    trace: List[str] = Field(default_factory=list)

    @classmethod
    def fromResult(cls, checkId: str, operation: str, result: CheckResult, expected: Verdict | None) -> "ReportLine":
        if expected is not None:
            matched = result.verdict == expected
        else:
            matched = result.verdict == Verdict.VERIFIED
        return cls(
            checkId=checkId,
            operation=operation,
            verdict=result.verdict,
            law=result.law,
            expected=expected,
            matched=matched,
            steps=result.steps,
            bounds=result.bounds,
            witness=result.witness,
            trace=result.trace,
        )


class ReportHeader(SQLModel):
    suite: str
    runId: str
    startedAt: str
    wallTimes: Dict[str, float] = Field(default_factory=dict)


class SuiteReport(SQLModel):
    header: ReportHeader
    lines: List[ReportLine]
    exitStatus: int


class CheckRecordBase(SQLModel):
    runId: str = Field(index=True)
    position: int
    checkId: str = Field(index=True)
    operation: str
    verdict: str
    law: str
    expected: str | None = None
    matched: bool = True
    witness: str = "{}"
    bounds: str = "null"
    steps: int = 0
    trace: str = "[]"


class CheckRecord(CheckRecordBase, table=True):
    """
    Represents a stored check of a suite run. JSON-valued fields are kept as
    text.
    """

    id: int | None = Field(default=None, primary_key=True)

    @classmethod
    def fromLine(cls, runId: str, position: int, line: ReportLine) -> "CheckRecord":
        return cls(
            runId=runId,
            position=position,
            checkId=line.checkId,
            operation=line.operation,
            verdict=line.verdict.value,
            law=line.law,
            expected=line.expected.value if line.expected is not None else None,
            matched=line.matched,
            witness=json.dumps(line.witness, sort_keys=True, default=str),
            bounds=json.dumps(line.bounds, sort_keys=True, default=str),
            steps=line.steps,
            trace=json.dumps(line.trace),
        )

    def toLine(self) -> ReportLine:
        return ReportLine(
            checkId=self.checkId,
            operation=self.operation,
            verdict=Verdict(self.verdict),
            law=self.law,
            expected=Verdict(self.expected) if self.expected is not None else None,
            matched=self.matched,
            steps=self.steps,
            bounds=json.loads(self.bounds),
            witness=json.loads(self.witness),
            trace=json.loads(self.trace),
        )


class SuitePOSTRequest(SQLModel):
    """
    Attributes:
        suite (Suite | None): Inline suite.
        builtin (str | None): Name of a builtin suite, used when `suite` is absent.
        workers (int): Size of the work pool.
        allowInconclusive (bool): Whether Inconclusive lines still pass.
    """

    suite: Suite | None = None
    builtin: str | None = None
    workers: int = Field(default=1, ge=1)
    allowInconclusive: bool = False


class ExplainGETResponse(SQLModel):
    runId: str
    checkId: str
    text: str
