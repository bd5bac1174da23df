"""
This module defines the bounded-semantics parameters every bounded check is
relative to.
Classes:
    Bounds(SQLModel):
        Attributes:
            - basis (List[str]): Atom tokens of the code universe (e.g. ["S", "K"]).
            - maxLeaves (int): Largest leaf count of enumerated codes.
            - fuel (int): Step budget of a single reduction or machine run.
            - poolLeaves (int): Largest leaf count of pool continuations.
            - psiCap (int): Largest Ψ-subset size in universal implication rows.
            - carrierLimit (int): Largest carrier size of enumerated objects.
"""

from typing import List
from sqlmodel import Field, SQLModel

from controller.checkconstants import DEFAULT_CARRIER_LIMIT, DEFAULT_PSI_CAP
from controller.errors import ResolutionError


class Bounds(SQLModel):
    """
    Declared finite universe, continuation pool and step budget. Suites must
    spell out every field; only the CLI string form has fallbacks for the last
    two fields.
    """

    basis: List[str]
    maxLeaves: int = Field(ge=1)
    fuel: int = Field(ge=0)
    poolLeaves: int = Field(ge=1)
    psiCap: int = Field(ge=0)
    carrierLimit: int = Field(ge=1)

    @classmethod
    def fromText(cls, text: str) -> "Bounds":
        """
        Parses `BASIS:MAX_LEAVES:FUEL:POOL_LEAVES[:PSI_CAP[:CARRIER_LIMIT]]`,
        where BASIS is a comma separated list of atom tokens.
        Args:
            text (str): The bounds string given on the command line.
        Returns:
            Bounds: The parsed bounds.
        Raises:
            ResolutionError: If the string does not have 4 to 6 fields or a
                numeric field is not an integer.
        """
        fields = text.split(":")
        if not 4 <= len(fields) <= 6:
            raise ResolutionError(f"expected 4 to 6 ':'-separated fields, got {text!r}")
        try:
            numbers = [int(field) for field in fields[1:]]
        except ValueError as error:
            raise ResolutionError(f"non-integer bounds field in {text!r}") from error
        psiCap = numbers[3] if len(numbers) > 3 else DEFAULT_PSI_CAP
        carrierLimit = numbers[4] if len(numbers) > 4 else DEFAULT_CARRIER_LIMIT
        return cls(
            basis=[token for token in fields[0].split(",") if token],
            maxLeaves=numbers[0],
            fuel=numbers[1],
            poolLeaves=numbers[2],
            psiCap=psiCap,
            carrierLimit=carrierLimit,
        )

    def key(self) -> tuple:
        return (
            tuple(self.basis),
            self.maxLeaves,
            self.fuel,
            self.poolLeaves,
            self.psiCap,
            self.carrierLimit,
        )

    def describe(self) -> dict:
        return self.model_dump()
