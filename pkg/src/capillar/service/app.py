"""FastAPI application exposing the four operations over HTTP.

Domain failures (non-convergence, aborted runs, degenerate inputs) map to
HTTP 422 with a typed error payload; schema violations are FastAPI's usual
422 validation responses.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CapillarError
from . import handlers, schemas

app = FastAPI(title="capillar", version=__version__)


@app.exception_handler(CapillarError)
async def capillar_error_handler(request: Request, exc: CapillarError):
    payload = handlers.error_payload(exc)
    return JSONResponse(status_code=422, content=payload.model_dump())


@app.get("/v1/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return handlers.handle_health(__version__)


@app.post("/v1/check-thermo", response_model=schemas.ThermoReport)
def check_thermo(cfg: schemas.CheckThermoConfig) -> schemas.ThermoReport:
    return handlers.handle_check_thermo(cfg)


@app.post("/v1/equilibrium", response_model=schemas.EquilibriumReport)
def equilibrium(cfg: schemas.EquilibriumConfig) -> schemas.EquilibriumReport:
    return handlers.handle_equilibrium(cfg)


@app.post("/v1/eigen", response_model=schemas.EigenReport)
def eigen(cfg: schemas.EigenConfig) -> schemas.EigenReport:
    return handlers.handle_eigen(cfg)


@app.post("/v1/run", response_model=schemas.RunArtifacts)
def run(cfg: schemas.RunConfig) -> schemas.RunArtifacts:
    return handlers.handle_run(cfg)
