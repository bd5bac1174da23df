"""
Main module of the realizability workbench service.
This module initializes the FastAPI application, configures logging and
middleware, creates the run store tables and includes the routers.
Routes:
- Root ("/"): Returns the service name.
Middleware:
- CORS Middleware: Allows all origins; the service is a local workbench.
Routers:
- `service.term.router`: Term reduction and abstraction.
- `service.algebra.router`: Builtin algebra validation.
- `service.check.router`: Single law checks (frames, topologies, objects, sheaves, machine).
- `service.suite.router`: Suite runs and explanations.
"""

from contextlib import asynccontextmanager
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from controller.checkconstants import configureLogging
from db import createDbAndTables
from service import constants
import service.algebra
import service.check
import service.suite
import service.term


@asynccontextmanager
async def lifespan(app: FastAPI):
    configureLogging()
    createDbAndTables()
    yield


app = FastAPI(title="Realizability workbench", lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(service.term.router)
app.include_router(service.algebra.router)
app.include_router(service.check.router)
app.include_router(service.suite.router)


@app.get("/")
def readRoot():
    """
    Handles the root endpoint of the application.

    Returns:
        dict: The service name.
    """
    return {"service": constants.HOME_PAGE}
