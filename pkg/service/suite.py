"""
This module defines the FastAPI routes running suites and explaining stored
checks.
Routes:
    - POST /suites/run:
        Runs an inline or builtin suite and stores its lines.
        Request Body: SuitePOSTRequest.
        Response: SuiteReport.
    - GET /reports/{runId}/checks/{checkId}/explain:
        Explanation of one stored check.
        Response: ExplainGETResponse.
Dependencies:
    - `getSession`: Provides a database session for the run store.
"""

import logging
from fastapi import APIRouter, Depends, HTTPException, status
from sqlmodel import Session

import controller.report as controller
from controller.errors import ScaleGuardError, UnknownNameError, WorkbenchError
from controller.suite import builtinSuite, runSuite
from db import getSession
from objects.report import ExplainGETResponse, SuitePOSTRequest, SuiteReport
from service import constants

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post(
    "/suites/run",
    response_model=SuiteReport,
)
def runSuiteRequest(
    request: SuitePOSTRequest,
    db: Session = Depends(getSession),
):
    """
    Runs a suite and stores one record per line under the run id of the
    report header.
    Args:
        request (SuitePOSTRequest): Inline suite or builtin name, pool size and
            whether Inconclusive lines pass.
        db (Session, optional): The database session dependency.
    Returns:
        SuiteReport: The run report.
    Raises:
        HTTPException: 422 if the request names no suite or a reference does
            not resolve, 404 for an unknown builtin name.
    """
    if (request.suite is None) == (request.builtin is None):
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=constants.INVALID_SUITE)
    try:
        suite = request.suite if request.suite is not None else builtinSuite(request.builtin)
        report = runSuite(suite, workers=request.workers, allowInconclusive=request.allowInconclusive)
    except UnknownNameError:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=constants.UNKNOWN_NAME)
    except ScaleGuardError as error:
        logger.warning("suite aborted: %s", error)
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=constants.SCALE_GUARD_EXCEEDED)
    except WorkbenchError as error:
        logger.warning("suite rejected: %s", error)
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=constants.INVALID_REFERENCE)
    controller.storeReport(report, db)
    return report


@router.get(
    "/reports/{runId}/checks/{checkId}/explain",
    response_model=ExplainGETResponse,
)
def explainCheck(
    runId: str,
    checkId: str,
    db: Session = Depends(getSession),
):
    try:
        text = controller.explainStored(runId, checkId, db)
    except UnknownNameError:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=constants.RUN_NOT_FOUND)
    return ExplainGETResponse(runId=runId, checkId=checkId, text=text)
