"""
This module defines the schemas of suite files.
Classes:
    - CheckSpecBase: Identity of a check inside a suite.
        Attributes:
            - id (str): Check id, unique inside the suite.
            - operation (str): Operation name, e.g. "validate-frame".
            - bounds (str): Bounds string `BASIS:MAX_LEAVES:FUEL:POOL_LEAVES:PSI_CAP:CARRIER_LIMIT`.
    - CheckSpec: A check with its input references and optional expectation.
    - Suite: A named list of checks.
"""

from typing import Any, Dict, List
from sqlmodel import Field, SQLModel

from objects.result import Verdict


class CheckSpecBase(SQLModel):
    id: str
    operation: str
    bounds: str


class CheckSpec(CheckSpecBase):
    """
    Input references are resolved by `controller.loader` before any check of
    the suite runs.
    Attributes:
        frame (Any | None): Frame reference ("heyting CHAIN3", {"tier": "cps"}, ...).
        algebra (Any | None): Algebra reference for algebra checks.
        object (Dict | None): Object block.
        topology (Any | None): "id", "dnn" or {"table": {...}}.
        proposition (str | None): Proposition text for single-proposition checks.
        propositions (List[str] | None): Proposition texts for campaigns.
        evidence (str | None): Evidence term text.
        phi, psi (str | None): Antecedent and consequent texts.
        rows (List[str] | None): Topology rows to check.
        size (int | None): Size parameter of enumeration campaigns.
        expect (Verdict | None): Expected verdict.
    """

    frame: Any | None = None
    algebra: Any | None = None
    object: Dict[str, Any] | None = None
    topology: Any | None = None
    proposition: str | None = None
    propositions: List[str] | None = None
    evidence: str | None = None
    phi: str | None = None
    psi: str | None = None
    rows: List[str] | None = None
    size: int | None = Field(default=None, ge=0)
    expect: Verdict | None = None


class Suite(SQLModel):
    name: str
    checks: List[CheckSpec]
