"""
This module defines the FastAPI routes of the combinator core.
Routes:
    - POST /terms/reduce:
        Reduces a closed term to weak head normal form within a budget,
        or to full normal form when `normalForm` is set.
        Request Body: TermPOSTRequest.
        Response: TermGETResponse.
    - POST /terms/abstract:
        Bracket abstraction of a variable out of a term.
        Request Body: AbstractPOSTRequest.
        Response: AbstractGETResponse.
Modules:
    - `controller.term`: Parsing, reduction and abstraction.
    - `objects.term`: Request and response models.
"""

import logging
from fastapi import APIRouter, HTTPException, status

import controller.term as controller
from controller.errors import OpenTermError, TermSyntaxError
from objects.term import AbstractGETResponse, AbstractPOSTRequest, TermGETResponse, TermPOSTRequest
from service import constants

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post(
    "/terms/reduce",
    response_model=TermGETResponse,
)
def reduceTerm(request: TermPOSTRequest):
    """
    Reduces a term with the K, S, FST and SND rules, head redex first.
    Args:
        request (TermPOSTRequest): Term text, rule-firing budget and whether to
            continue inside the arguments.
    Returns:
        TermGETResponse: The weak head normal form (or the full normal form
        when asked), or no value when the budget ran out.
    Raises:
        HTTPException: 422 if the term does not parse or is open.
    """
    try:
        term = controller.parseTerm(request.term)
        reducer = controller.normalize if request.normalForm else controller.reduce
        outcome = reducer(term, request.budget)
    except (TermSyntaxError, OpenTermError) as error:
        logger.warning("rejected term %r: %s", request.term, error)
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=constants.INVALID_TERM)
    return TermGETResponse(
        term=controller.printTerm(term),
        value=controller.printTerm(outcome.value) if outcome.isValue else None,
        steps=outcome.steps,
        leaves=controller.leafCount(term),
    )


@router.post(
    "/terms/abstract",
    response_model=AbstractGETResponse,
)
def abstractTerm(request: AbstractPOSTRequest):
    try:
        body = controller.parseTerm(request.term, allowVariables=True)
    except TermSyntaxError as error:
        logger.warning("rejected term %r: %s", request.term, error)
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=constants.INVALID_TERM)
    return AbstractGETResponse(term=controller.printTerm(controller.abstract(request.variable, body)))
