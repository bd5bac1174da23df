"""
This module defines the FastAPI routes of single law checks. Each route
resolves its references like a one-check suite and returns the CheckResult.
Routes:
    - POST /frames/validate: Evidenced-frame laws.
    - POST /topologies/validate: Lawvere-Tierney rows.
    - POST /objects/validate: sym and trs of an object.
    - POST /sheaves/check: Internal separation and descent.
    - POST /sheaves/oracle: Enumeration oracle.
    - POST /machine/dne: Double negation elimination on a tier.
Request Body: CheckPOSTRequest.
Response: CheckResult.
Errors:
    422 with INVALID_REFERENCE when a reference does not resolve, with
    SCALE_GUARD_EXCEEDED when an enumeration is too large.
"""

import logging
from fastapi import APIRouter, HTTPException, status

from controller.errors import ScaleGuardError, WorkbenchError
from controller.suite import prepareCheck
from objects.check import CheckPOSTRequest
from objects.result import CheckResult
from service import constants

logger = logging.getLogger(__name__)

router = APIRouter()


def runCheck(operation: str, request: CheckPOSTRequest) -> CheckResult:
    """
    Resolves and runs one check.
    Raises:
        HTTPException: 422 on resolution errors and scale-guard aborts.
    """
    try:
        return prepareCheck(request.toSpec(operation), operation).run()
    except ScaleGuardError as error:
        logger.warning("%s aborted: %s", operation, error)
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=constants.SCALE_GUARD_EXCEEDED)
    except WorkbenchError as error:
        logger.warning("%s rejected: %s", operation, error)
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=constants.INVALID_REFERENCE)


@router.post("/frames/validate", response_model=CheckResult)
def validateFrame(request: CheckPOSTRequest):
    return runCheck("validate-frame", request)


@router.post("/topologies/validate", response_model=CheckResult)
def validateTopology(request: CheckPOSTRequest):
    return runCheck("validate-topology", request)


@router.post("/objects/validate", response_model=CheckResult)
def validateObject(request: CheckPOSTRequest):
    return runCheck("validate-object", request)


@router.post("/sheaves/check", response_model=CheckResult)
def checkSheaf(request: CheckPOSTRequest):
    return runCheck("check-sheaf", request)


@router.post("/sheaves/oracle", response_model=CheckResult)
def sheafOracle(request: CheckPOSTRequest):
    return runCheck("sheaf-oracle", request)


@router.post("/machine/dne", response_model=CheckResult)
def checkDne(request: CheckPOSTRequest):
    """
    Checks that call/cc realizes ¬¬φ ⊃ φ; `frame` defaults to the CPS tier.
    """
    return runCheck("check-dne", request)
