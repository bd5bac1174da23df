"""
This module contains pytest fixtures and helper functions for setting up test data
and dependencies for the realizability workbench.
Fixtures:
    - session_fixture: Creates an in-memory SQLite database session for testing.
    - client_fixture: Provides a FastAPI TestClient with overridden dependencies.
    - chain3_fixture: The CHAIN3 Heyting frame.
    - partialCore_fixture: A small partiality-tier core over BOOL2.
    - cpsCore_fixture: A small continuation-tier core over BOOL2.
Helper Functions:
    - createBounds(text): Parses a bounds string.
    - createFrame(name): The Heyting frame of a builtin algebra.
    - createObject(frame, carrier, eq): An EftObject from a table keyed by
      element pairs; missing pairs are filled symmetrically.
Dependencies:
    - Uses FastAPI's dependency injection to override the database session during tests.
    - Relies on SQLModel for ORM functionality and SQLite for in-memory testing.
"""

from typing import Dict, Sequence, Tuple
import pytest
from fastapi.testclient import TestClient
from sqlmodel import SQLModel, Session, create_engine
from sqlmodel.pool import StaticPool
from controller.frame import HeytingFrame, heytingFrame
from controller.heyting import builtinAlgebra
from controller.machine import ContinuationCore
from controller.mca import PartialCore
from controller.topos import EftObject
from db import getSession
from main import app
from objects.bounds import Bounds


@pytest.fixture(name="session")
def session_fixture():
    """
    Creates a session fixture using an in-memory SQLite database shared through
    a `StaticPool`, with the run store schema created.

    Yields:
        Session: A session connected to the in-memory SQLite database.
    """
    engine = create_engine(
        "sqlite://",
        connect_args={"check_same_thread": False},
        poolclass=StaticPool,
    )
    SQLModel.metadata.create_all(
        engine,
    )
    with Session(engine) as session:
        yield session


@pytest.fixture(name="client")
def client_fixture(session: Session):
    """
    A test client for the application whose `getSession` dependency yields the
    test session. The overrides are cleared after the test.
    Args:
        session (Session): The database session used by the routes.
    Yields:
        TestClient: A test client instance configured with the overridden session.
    """

    def get_session_override():
        return session

    app.dependency_overrides[getSession] = get_session_override
    client = TestClient(app)
    yield client
    app.dependency_overrides.clear()


@pytest.fixture(name="chain3")
def chain3_fixture() -> HeytingFrame:
    return createFrame("CHAIN3")


@pytest.fixture(name="partialCore")
def partialCore_fixture() -> PartialCore:
    return PartialCore(builtinAlgebra("BOOL2"), createBounds("S,K:2:200:1"))


@pytest.fixture(name="cpsCore")
def cpsCore_fixture() -> ContinuationCore:
    return ContinuationCore(createBounds("S,K:2:2000:2"))


def createBounds(text: str) -> Bounds:
    return Bounds.fromText(text)


def createFrame(name: str) -> HeytingFrame:
    """
    Returns the Heyting frame of the builtin algebra `name`.
    """
    return heytingFrame(builtinAlgebra(name))


def createObject(
    frame: HeytingFrame,
    carrier: Sequence[str],
    eq: Dict[Tuple[str, str], str],
    name: str = "A",
) -> EftObject:
    """
    Creates an EftObject. Off-diagonal pairs given one way round are mirrored;
    pairs given neither way default to the bottom of the frame.

    Args:
        frame (HeytingFrame): The frame of the object.
        carrier (Sequence[str]): The points.
        eq (Dict[Tuple[str, str], str]): Values of x ∼ y.
        name (str): Name of the object.

    Returns:
        EftObject: The object; it is not validated.
    """
    table = {}
    for x in carrier:
        for y in carrier:
            table[(x, y)] = eq.get((x, y), eq.get((y, x), frame.bottom))
    return EftObject(frame, list(carrier), table, name=name)
