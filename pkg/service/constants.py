"""
This module defines the message strings returned by the workbench HTTP service.
Constants:
----------
- INVALID_TERM: The term text does not parse or is open.
- INVALID_ALGEBRA: The algebra name or block is not a Heyting algebra.
- INVALID_REFERENCE: A frame, object, topology or proposition does not resolve.
- INVALID_SUITE: The suite request names neither an inline nor a builtin suite.
- SCALE_GUARD_EXCEEDED: An enumeration exceeded the ceiling.
- RUN_NOT_FOUND: No stored run or check with the given ids.
- UNKNOWN_NAME: A builtin name is unknown.
- HOME_PAGE: Body of the root endpoint.
"""

INVALID_TERM:str = "Invalid term"
INVALID_ALGEBRA:str = "Invalid algebra"
INVALID_REFERENCE:str = "Reference could not be resolved"
INVALID_SUITE:str = "Give exactly one of suite and builtin"
SCALE_GUARD_EXCEEDED:str = "Enumeration exceeds the ceiling"
RUN_NOT_FOUND:str = "Run or check not found"
UNKNOWN_NAME:str = "Unknown name"
HOME_PAGE:str = "realizability workbench"
