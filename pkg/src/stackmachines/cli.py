"""smctl: command-line client for the stack-machine workbench.

Every subcommand goes through the service layer: in-process by default, or
against a running server when --server is given.  Exit codes are a stable
contract: 0 success/accepted/valid, 1 rejected/invalid, 2 usage or parse
error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .service import ops
from .service.ops import ServiceError
from .service.schemas import (
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

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_ENDPOINTS = {
    "/check-valid": (ops.check_valid, CheckValidResponse),
    "/accept": (ops.accept, AcceptResponse),
    "/convert": (ops.convert, MachineResponse),
    "/determinize": (ops.determinize, MachineResponse),
    "/qprob": (ops.qprob, QprobResponse),
    "/oracle": (ops.oracle, OracleResponse),
    "/export-dot": (ops.export_dot, ExportDotResponse),
}


def _call(server: str | None, path: str, request):
    handler, response_model = _ENDPOINTS[path]
    if server is None:
        return handler(request)
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=request.model_dump(), timeout=300.0)
    if resp.status_code == 400:
        detail = resp.json().get("detail", {})
        raise ServiceError(
            detail.get("kind", "usage"),
            detail.get("message", "request failed"),
            detail.get("line"),
            detail.get("col"),
        )
    resp.raise_for_status()
    return response_model.model_validate(resp.json())


def _read_machine(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ServiceError("usage", f"cannot read machine file {path}: {exc}") from exc


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text, encoding="utf-8")


def _render_trace(index: int, trace, two: bool) -> None:
    label = f"stack {index + 1}: " if two else ""
    print(f"{label}{trace.outcome}")
    for pos, stack in enumerate(trace.steps, start=1):
        marker = "  <- first illegal pop" if trace.illegal_at == pos else ""
        print(f"  {pos:3d}  [{' '.join(stack)}]{marker}")


def cmd_check_valid(args) -> int:
    resp = _call(args.server, "/check-valid", CheckValidRequest(ops=args.ops))
    for k, trace in enumerate(resp.traces):
        _render_trace(k, trace, two=len(resp.traces) == 2)
    print("valid" if resp.valid else "invalid")
    return EXIT_OK if resp.valid else EXIT_REJECTED


def cmd_accept(args) -> int:
    req = AcceptRequest(
        machine=_read_machine(args.machine),
        input=args.input,
        max_steps=args.max_steps,
        max_depth=args.max_depth,
        witness=args.witness,
    )
    resp = _call(args.server, "/accept", req)
    print(resp.verdict)
    if args.witness and resp.witness is not None:
        print(f"witness: {resp.witness}")
    return {"accepted": EXIT_OK, "rejected": EXIT_REJECTED}.get(resp.verdict, EXIT_INCONCLUSIVE)


def cmd_convert(args) -> int:
    req = ConvertRequest(machine=_read_machine(args.machine), to=args.to)
    resp = _call(args.server, "/convert", req)
    _write_out(resp.machine, args.out)
    return EXIT_OK


def cmd_determinize(args) -> int:
    req = DeterminizeRequest(machine=_read_machine(args.machine))
    resp = _call(args.server, "/determinize", req)
    _write_out(resp.machine, args.out)
    return EXIT_OK


def cmd_qprob(args) -> int:
    req = QprobRequest(
        machine=_read_machine(args.machine),
        input=args.input,
        max_annot_len=args.max_len,
        tol=args.tol,
    )
    resp = _call(args.server, "/qprob", req)
    print(repr(resp.probability))
    return EXIT_OK


def cmd_oracle(args) -> int:
    req = OracleRequest(
        machine=_read_machine(args.machine),
        max_input_len=args.max_input_len,
        max_annot_len=args.max_annot_len,
    )
    resp = _call(args.server, "/oracle", req)
    for x in resp.accepted:
        print(x if x else "_")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    req = ExportDotRequest(machine=_read_machine(args.machine))
    resp = _call(args.server, "/export-dot", req)
    _write_out(resp.dot, args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smctl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", help="base URL of a running service (default: in-process)")

    p = sub.add_parser("check-valid", parents=[common], help="check a stack-operation sequence")
    p.add_argument("ops", nargs="?", default="", help="whitespace-separated operations")
    p.set_defaults(func=cmd_check_valid)

    p = sub.add_parser("accept", parents=[common], help="decide membership of an input string")
    p.add_argument("-m", "--machine", required=True, help="machine file (.sm)")
    p.add_argument("-x", "--input", required=True, help="input string (one character per symbol)")
    p.add_argument("--max-steps", type=int, default=100000, help="search step bound (two-stack only)")
    p.add_argument("--max-depth", type=int, default=16, help="stack depth bound (two-stack only)")
    p.add_argument("--witness", action="store_true", help="print an accepting annotation")
    p.set_defaults(func=cmd_accept)

    p = sub.add_parser("convert", parents=[common], help="convert between pushdown presentations")
    p.add_argument("--to", required=True, choices=("pda1", "pda2"))
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("-o", "--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("determinize", parents=[common], help="subset-construct a deterministic machine")
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_determinize)

    p = sub.add_parser("qprob", parents=[common], help="bounded quantum acceptance probability")
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("-x", "--input", required=True)
    p.add_argument("--max-len", type=int, default=6, help="annotation length bound")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_qprob)

    p = sub.add_parser("oracle", parents=[common], help="enumerate the accepted language by brute force")
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("--max-input-len", type=int, default=4)
    p.add_argument("--max-annot-len", type=int, default=10)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export-dot", parents=[common], help="emit the transition diagram in DOT form")
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ServiceError as exc:
        loc = ""
        if exc.line is not None:
            loc = f" (line {exc.line}" + (f", col {exc.col}" if exc.col is not None else "") + ")"
        print(f"smctl: {exc.kind} error: {exc.message}{loc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
