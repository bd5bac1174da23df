"""
This module defines the request and response schemas of the term endpoints.
Classes:
    - TermBase: A term in its text form.
        Attributes:
            - term (str): Term text, e.g. "S K K".
    - TermPOSTRequest: A term to reduce with a rule-firing budget.
    - TermGETResponse: The weak head normal form (or the full one), or no
      value when the budget ran out.
    - AbstractPOSTRequest: A body with variables and the variable to abstract.
    - AbstractGETResponse: The combinator term of the abstraction.
"""

from sqlmodel import Field, SQLModel


class TermBase(SQLModel):
    term: str


class TermPOSTRequest(TermBase):
    budget: int = Field(default=1000, ge=0)
    normalForm: bool = False


class TermGETResponse(TermBase):
    """
    Attributes:
        value (str | None): Weak head normal form, or the full normal form
            when it was asked for; absent when the budget ran out.
        steps (int): Rule firings used.
        leaves (int): Leaf count of the input term.
    """

    value: str | None = None
    steps: int
    leaves: int


class AbstractPOSTRequest(TermBase):
    variable: str


class AbstractGETResponse(TermBase):
    pass
