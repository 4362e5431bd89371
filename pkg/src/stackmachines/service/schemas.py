"""Request/response models for the HTTP API.

Machines travel as their ``.sm`` text form inside JSON; everything else is
plain scalars and lists, so the wire format stays diffable and the CLI can
render responses directly.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class TraceModel(BaseModel):
    steps: list[list[str]]
    outcome: str
    illegal_at: int | None = None


class CheckValidRequest(BaseModel):
    ops: str


class CheckValidResponse(BaseModel):
    valid: bool
    traces: list[TraceModel]


class AcceptRequest(BaseModel):
    machine: str
    input: str
    max_steps: int = 100000
    max_depth: int = 16
    witness: bool = False


class AcceptResponse(BaseModel):
    verdict: str
    witness: str | None = None
    states_visited: int = 0


class ConvertRequest(BaseModel):
    machine: str
    to: str


class DeterminizeRequest(BaseModel):
    machine: str


class MachineResponse(BaseModel):
    machine: str


class QprobRequest(BaseModel):
    machine: str
    input: str
    max_annot_len: int = 6
    tol: float = 1e-9


class QprobResponse(BaseModel):
    probability: float


class OracleRequest(BaseModel):
    machine: str
    max_input_len: int = 4
    max_annot_len: int = 10


class OracleResponse(BaseModel):
    accepted: list[str]


class ExportDotRequest(BaseModel):
    machine: str


class ExportDotResponse(BaseModel):
    dot: str


class ErrorDetail(BaseModel):
    kind: str = Field(description="'parse' or 'usage'")
    message: str
    line: int | None = None
    col: int | None = None
