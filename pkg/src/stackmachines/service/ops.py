"""Service operations: one function per endpoint, shared by the HTTP app and the CLI.

Every handler takes a request model and returns a response model; anything the
caller got wrong raises ServiceError with kind 'parse' or 'usage' so both the
HTTP layer and the CLI can map it uniformly.
"""

from __future__ import annotations

import itertools

from .. import convert as convert_mod
from .. import determinize as determinize_mod
from ..dot import export_dot as export_dot_text
from ..errors import CapExceededError, MalformedInputError, ParseError
from ..machines import DpdaII, PdaI, PdaII, TwoStackMachine
from ..quantum import QuantumMachine, accept_prob_bounded, check_unitary
from ..recognition import (
    ACCEPTED,
    REJECTED,
    accepts_pda2,
    accepts_two_stack_bounded,
    brute_force_accepts,
)
from ..smfile import machine_kind, parse_machine, parse_op_token, parse_pair_token, serialize_machine
from ..tokens import annotation_text, token_key, token_text
from ..validity import check_valid_single, check_valid_two
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
    TraceModel,
)


class ServiceError(Exception):
    def __init__(self, kind: str, message: str, line: int | None = None, col: int | None = None):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.line = line
        self.col = col


def _parse(text: str):
    try:
        return parse_machine(text)
    except ParseError as exc:
        raise ServiceError("parse", exc.message, exc.line, exc.col) from exc


def _trace_model(trace) -> TraceModel:
    return TraceModel(
        steps=[list(stack) for _pos, stack in trace.steps],
        outcome=trace.outcome,
        illegal_at=trace.illegal_at,
    )


def check_valid(req: CheckValidRequest) -> CheckValidResponse:
    words = req.ops.split()
    try:
        if any(w.startswith("(") for w in words):
            pairs = [parse_pair_token(w) for w in words]
            t1, t2 = check_valid_two(pairs)
            return CheckValidResponse(valid=t1.ok and t2.ok, traces=[_trace_model(t1), _trace_model(t2)])
        ops = [parse_op_token(w) for w in words]
        trace = check_valid_single(ops)
        return CheckValidResponse(valid=trace.ok, traces=[_trace_model(trace)])
    except (ParseError, MalformedInputError) as exc:
        raise ServiceError("parse", str(exc)) from exc


def accept(req: AcceptRequest) -> AcceptResponse:
    m = _parse(req.machine)
    try:
        if isinstance(m, TwoStackMachine):
            outcome = accepts_two_stack_bounded(m, req.input, req.max_steps, req.max_depth)
            witness = None
            if req.witness and outcome.witness is not None:
                witness = annotation_text(outcome.witness, m.alphabets.tape)
            return AcceptResponse(
                verdict=outcome.verdict, witness=witness, states_visited=outcome.states_visited
            )
        if isinstance(m, PdaI):
            m = convert_mod.pda1_to_pda2(m)
        elif isinstance(m, DpdaII):
            m = m.as_pda2()
        if isinstance(m, PdaII):
            ok, wit = accepts_pda2(m, req.input, witness=req.witness)
            return AcceptResponse(
                verdict=ACCEPTED if ok else REJECTED,
                witness=annotation_text(wit) if wit is not None else None,
            )
    except MalformedInputError as exc:
        raise ServiceError("usage", str(exc)) from exc
    raise ServiceError("usage", f"cannot run 'accept' on a {machine_kind(m)} machine (try qprob)")


def convert(req: ConvertRequest) -> MachineResponse:
    m = _parse(req.machine)
    if req.to == "pda2":
        if isinstance(m, PdaI):
            return MachineResponse(machine=serialize_machine(convert_mod.pda1_to_pda2(m)))
        if isinstance(m, DpdaII):
            return MachineResponse(machine=serialize_machine(m.as_pda2()))
    elif req.to == "pda1":
        if isinstance(m, DpdaII):
            m = m.as_pda2()
        if isinstance(m, PdaII):
            return MachineResponse(machine=serialize_machine(_fresh_sentinel_pda1(m)))
    else:
        raise ServiceError("usage", f"unknown conversion target {req.to!r} (expected pda1 or pda2)")
    raise ServiceError("usage", f"cannot convert a {machine_kind(m)} machine to {req.to}")


def _fresh_sentinel_pda1(m: PdaII) -> PdaI:
    for candidate in itertools.chain(("Z0",), (f"Z{k}" for k in itertools.count(1))):
        if candidate not in m.stack_alphabet and candidate not in m.input_alphabet:
            return convert_mod.pda2_to_pda1(m, candidate)
    raise AssertionError("unreachable")


def determinize(req: DeterminizeRequest) -> MachineResponse:
    m = _parse(req.machine)
    if isinstance(m, DpdaII):
        m = m.as_pda2()
    if not isinstance(m, PdaII):
        raise ServiceError("usage", f"cannot determinize a {machine_kind(m)} machine")
    return MachineResponse(machine=serialize_machine(determinize_mod.subset_construct(m)))


def qprob(req: QprobRequest) -> QprobResponse:
    m = _parse(req.machine)
    if not isinstance(m, QuantumMachine):
        raise ServiceError("usage", f"cannot compute acceptance probability for a {machine_kind(m)} machine")
    for tok, matrix in sorted(m.unitaries.matrices.items(), key=lambda kv: token_key(kv[0])):
        if not check_unitary(matrix, req.tol):
            raise ServiceError(
                "usage",
                f"matrix for token {token_text(tok, m.alphabets.tape)} is not unitary within {req.tol}",
            )
    try:
        value = accept_prob_bounded(m, req.input, req.max_annot_len)
    except (MalformedInputError, CapExceededError) as exc:
        raise ServiceError("usage", str(exc)) from exc
    return QprobResponse(probability=value)


def oracle(req: OracleRequest) -> OracleResponse:
    m = _parse(req.machine)
    if isinstance(m, PdaI):
        m = convert_mod.pda1_to_pda2(m)
    elif isinstance(m, DpdaII):
        m = m.as_pda2()
    if not isinstance(m, (PdaII, TwoStackMachine)):
        raise ServiceError("usage", f"cannot run the oracle on a {machine_kind(m)} machine")
    sigma = sorted(m.input_alphabet if isinstance(m, PdaII) else m.alphabets.input)
    accepted = []
    try:
        for n in range(req.max_input_len + 1):
            for combo in itertools.product(sigma, repeat=n):
                x = "".join(combo)
                if brute_force_accepts(m, x, req.max_annot_len):
                    accepted.append(x)
    except (CapExceededError, MalformedInputError) as exc:
        raise ServiceError("usage", str(exc)) from exc
    return OracleResponse(accepted=accepted)


def export_dot(req: ExportDotRequest) -> ExportDotResponse:
    m = _parse(req.machine)
    return ExportDotResponse(dot=export_dot_text(m))
