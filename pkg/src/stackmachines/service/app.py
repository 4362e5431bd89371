"""FastAPI wiring for the workbench service."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import ops
from .ops import ServiceError
from .schemas import (
    AcceptRequest,
    AcceptResponse,
    CheckValidRequest,
    CheckValidResponse,
    ConvertRequest,
    DeterminizeRequest,
    ExportDotRequest,
    ExportDotResponse,
    MachineResponse,
    OracleRequest,
    OracleResponse,
    QprobRequest,
    QprobResponse,
)

app = FastAPI(title="stackmachines", version="0.1.0")


@app.exception_handler(ServiceError)
async def service_error_handler(_request: Request, exc: ServiceError):
    return JSONResponse(
        status_code=400,
        content={"detail": {"kind": exc.kind, "message": exc.message, "line": exc.line, "col": exc.col}},
    )


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/check-valid", response_model=CheckValidResponse)
def check_valid(req: CheckValidRequest):
    return ops.check_valid(req)


@app.post("/accept", response_model=AcceptResponse)
def accept(req: AcceptRequest):
    return ops.accept(req)


@app.post("/convert", response_model=MachineResponse)
def convert(req: ConvertRequest):
    return ops.convert(req)


@app.post("/determinize", response_model=MachineResponse)
def determinize(req: DeterminizeRequest):
    return ops.determinize(req)


@app.post("/qprob", response_model=QprobResponse)
def qprob(req: QprobRequest):
    return ops.qprob(req)


@app.post("/oracle", response_model=OracleResponse)
def oracle(req: OracleRequest):
    return ops.oracle(req)


@app.post("/export-dot", response_model=ExportDotResponse)
def export_dot(req: ExportDotRequest):
    return ops.export_dot(req)
