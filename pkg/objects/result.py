"""
This module defines the three-valued outcome returned by every law check.
Classes:
    Verdict(str, Enum):
        VERIFIED, COUNTEREXAMPLE or INCONCLUSIVE.
    CheckResult(SQLModel):
        The universal return type of law checks.
        Attributes:
            - verdict (Verdict): The outcome.
            - law (str): Name of the law or formula that was checked.
            - witness (dict): Evidence found (Verified) or the violating instance
              (Counterexample) or the exhausted computation (Inconclusive).
            - bounds (dict | None): The bounds the verdict is relative to.
            - steps (int): Reduction or machine steps consumed.
            - trace (List[str]): Optional machine trace lines.
"""

from enum import Enum
from typing import Any, Iterable, List
from sqlmodel import Field, SQLModel


class Verdict(str, Enum):
    VERIFIED = "VERIFIED"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    INCONCLUSIVE = "INCONCLUSIVE"


class CheckResult(SQLModel):
    """
    Three-valued outcome of a law check. Verified verdicts are exact relative
    to the recorded bounds; Counterexample carries a replayable instance;
    Inconclusive means a budget ran out before the instance could be decided.
    """

    verdict: Verdict
    law: str
    witness: dict[str, Any] = Field(default_factory=dict)
    bounds: dict[str, Any] | None = None
    steps: int = 0
    trace: List[str] = Field(default_factory=list)

    @property
    def isVerified(self) -> bool:
        return self.verdict == Verdict.VERIFIED

    @property
    def isCounterexample(self) -> bool:
        return self.verdict == Verdict.COUNTEREXAMPLE

    @property
    def isInconclusive(self) -> bool:
        return self.verdict == Verdict.INCONCLUSIVE

    @classmethod
    def verified(cls, law: str, **kwargs) -> "CheckResult":
        return cls(verdict=Verdict.VERIFIED, law=law, **kwargs)

    @classmethod
    def counterexample(cls, law: str, **kwargs) -> "CheckResult":
        return cls(verdict=Verdict.COUNTEREXAMPLE, law=law, **kwargs)

    @classmethod
    def inconclusive(cls, law: str, **kwargs) -> "CheckResult":
        return cls(verdict=Verdict.INCONCLUSIVE, law=law, **kwargs)

    @classmethod
    def combine(
        cls,
        law: str,
        results: Iterable["CheckResult"],
        witness: dict[str, Any] | None = None,
        bounds: dict[str, Any] | None = None,
    ) -> "CheckResult":
        """
        Folds several results into one: the first Counterexample wins, then the
        first Inconclusive, otherwise Verified with the summed step count.
        Args:
            law (str): Law name used for the Verified outcome.
            results (Iterable[CheckResult]): Results in enumeration order.
            witness (dict | None): Witness attached to the Verified outcome.
            bounds (dict | None): Bounds attached to the Verified outcome.
        Returns:
            CheckResult: The folded result.
        """
        steps = 0
        pending = None
        for result in results:
            steps += result.steps
            if result.isCounterexample:
                return result
            if result.isInconclusive and pending is None:
                pending = result
        if pending is not None:
            return pending
        return cls.verified(law, witness=witness or {}, bounds=bounds, steps=steps)
