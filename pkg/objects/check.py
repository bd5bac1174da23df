"""
This module defines the request schema shared by the single-check endpoints.
Classes:
    - CheckPOSTRequest: The references of one check.
        Attributes:
            - bounds (str): Bounds string `BASIS:MAX_LEAVES:FUEL:POOL_LEAVES[:PSI_CAP[:CARRIER_LIMIT]]`.
            - frame (Any | None): Frame reference, e.g. "heyting CHAIN3" or {"tier": "cps"}.
            - object (Dict | None): Object block.
            - topology (Any | None): "id", "dnn" or {"table": {...}}.
            - proposition (str | None): Proposition text.
            - propositions (List[str] | None): Proposition sample.
            - rows (List[str] | None): Topology rows.
"""

from typing import Any, Dict, List
from sqlmodel import SQLModel

from objects.suite import CheckSpec


class CheckPOSTRequest(SQLModel):
    bounds: str
    frame: Any | None = None
    object: Dict[str, Any] | None = None
    topology: Any | None = None
    proposition: str | None = None
    propositions: List[str] | None = None
    rows: List[str] | None = None

    def toSpec(self, operation: str) -> CheckSpec:
        return CheckSpec(id=operation, operation=operation, **self.model_dump())
