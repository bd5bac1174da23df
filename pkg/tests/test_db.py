"""
Unit tests for the database module.
This module contains tests to verify the run store configuration.
Functions:
- test_createDbAndTables: Ensures that the run store table is created.
- test_getSession: Verifies that the session generator yields a usable session.
- test_engine_configuration: Checks that the default engine is in-memory SQLite.
"""

from sqlalchemy import inspect
from sqlmodel import Session
from db import createDbAndTables, getSession, engine


def test_createDbAndTables():
    """
    GIVEN the run store engine
    WHEN `createDbAndTables` is called twice
    THEN the check record table exists and the second call is a no-op
    """
    createDbAndTables()
    createDbAndTables()
    assert "checkrecord" in inspect(engine).get_table_names()


def test_getSession():
    """
    GIVEN the session generator `getSession`
    WHEN a session is retrieved from it
    THEN it is a `Session` bound to the workbench engine
    """
    sessionGenerator = getSession()
    session = next(sessionGenerator, None)
    assert isinstance(session, Session), "getSession did not yield a valid Session instance"
    assert session.get_bind() is engine
    sessionGenerator.close()


def test_engine_configuration():
    """
    GIVEN no WORKBENCH_DATABASE_URL in the environment
    WHEN the engine is inspected
    THEN it is an in-memory SQLite database
    """
    assert engine.url.drivername == "sqlite"
    assert engine.url.database is None
