"""
This module stores suite runs and reads them back for `explain`.
Functions:
    storeReport(report: SuiteReport, db: Session) -> List[CheckRecord]:
        Inserts one record per report line.
    getRunLines(runId: str, db: Session) -> List[ReportLine]:
        Lines of a stored run in suite order.
    explainStored(runId: str, checkId: str, db: Session) -> str:
        The explanation of one stored check.
"""

import logging
from typing import List
from sqlmodel import Session, select

from controller.errors import UnknownNameError
from controller.suite import explain
from objects.report import CheckRecord, ReportLine, SuiteReport

logger = logging.getLogger(__name__)


def storeReport(report: SuiteReport, db: Session) -> List[CheckRecord]:
    """
    Inserts the lines of a run.
    Args:
        report (SuiteReport): The finished run.
        db (Session): The database session.
    Returns:
        List[CheckRecord]: The stored records with their ids.
    """
    records = [
        CheckRecord.fromLine(report.header.runId, position, line) for position, line in enumerate(report.lines)
    ]
    db.add_all(records)
    db.flush()
    [db.refresh(record) for record in records]
    db.commit()
    logger.debug("stored run %s with %d checks", report.header.runId, len(records))
    return records


def getRunLines(runId: str, db: Session) -> List[ReportLine]:
    records = db.exec(select(CheckRecord).where(CheckRecord.runId == runId).order_by(CheckRecord.position)).all()
    return [record.toLine() for record in records]


def explainStored(runId: str, checkId: str, db: Session) -> str:
    """
    Raises:
        UnknownNameError: If the run or the check is not stored.
    """
    lines = getRunLines(runId, db)
    if not lines:
        raise UnknownNameError(f"no stored run {runId!r}")
    return explain(checkId, lines)
