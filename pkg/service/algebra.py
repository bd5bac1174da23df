"""
This module defines the FastAPI route validating the builtin Heyting algebras.
Routes:
    - GET /algebras/{name}/validate:
        Exhaustive Heyting law check of a builtin algebra.
        Path Parameter: `name` (str) - BOOL2, CHAIN3 or DIAMOND4.
        Response: CheckResult.
"""

from fastapi import APIRouter, HTTPException, status

import controller.heyting as controller
from controller.errors import UnknownNameError
from objects.result import CheckResult
from service import constants

router = APIRouter()


@router.get(
    "/algebras/{name}/validate",
    response_model=CheckResult,
)
def validateAlgebra(name: str):
    try:
        algebra = controller.builtinAlgebra(name)
    except UnknownNameError:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=constants.UNKNOWN_NAME)
    return controller.validateAlgebra(algebra)
