"""
This module sets up the run store: the database connection and the session
dependency of the FastAPI application.
Functions:
    createDbAndTables():
        Creates all tables defined in the SQLModel metadata.
    getSession():
        Provides a session for interacting with the database. This is designed
        to be used as a dependency in FastAPI routes.
Variables:
    DATABASE_URL_VARIABLE (str):
        Environment variable naming the database URL.
    databaseUrl (str):
        The connection URL; defaults to an in-memory SQLite database.
    engine (sqlmodel.Engine):
        The SQLAlchemy engine. In-memory SQLite shares one connection through a
        `StaticPool` so every session sees the same database.
    SessionDep (Annotated[Session, Depends]):
        A FastAPI dependency that provides a database session.
"""

import os
from typing import Annotated
from fastapi import Depends
from sqlmodel import Session, SQLModel, create_engine
from sqlmodel.pool import StaticPool
import objects

DATABASE_URL_VARIABLE = "WORKBENCH_DATABASE_URL"

databaseUrl = os.environ.get(DATABASE_URL_VARIABLE, "sqlite://")

connectArgs = {"check_same_thread": False} if databaseUrl.startswith("sqlite") else {}
engineArgs = {"poolclass": StaticPool} if databaseUrl == "sqlite://" else {}
engine = create_engine(databaseUrl, connect_args=connectArgs, **engineArgs)


def createDbAndTables():
    """
    Creates all tables defined in the SQLModel metadata. Calling it again is a
    no-op for existing tables.
    """
    SQLModel.metadata.create_all(engine)


def getSession():
    """
    Yields:
        Session: A session bound to the workbench engine, closed on exit.
    """
    with Session(engine) as session:
        yield session


SessionDep = Annotated[Session, Depends(getSession)]
