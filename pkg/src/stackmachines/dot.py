"""Transition-diagram export in the DOT graph description language."""

from __future__ import annotations

from .machines import Dfa, DpdaII, PdaI, PdaII, TwoStackMachine
from .quantum import QuantumMachine
from .tokens import token_key, token_text


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _edges(m) -> list[tuple[str, str, str]]:
    if isinstance(m, (TwoStackMachine, DpdaII, Dfa)):
        tape = m.alphabets.tape if isinstance(m, TwoStackMachine) else frozenset()
        return [
            (q, r, token_text(tok, tape))
            for (q, tok), r in sorted(m.delta.items(), key=lambda kv: (kv[0][0], token_key(kv[0][1])))
        ]
    if isinstance(m, PdaII):
        return [
            (q, r, token_text(tok))
            for (q, tok), image in sorted(m.delta.items(), key=lambda kv: (kv[0][0], token_key(kv[0][1])))
            for r in sorted(image)
        ]
    if isinstance(m, PdaI):
        out = []
        for (q, a, x), image in sorted(m.delta.items(), key=lambda kv: (kv[0][0], token_key(kv[0][1]), kv[0][2])):
            for p, gamma in sorted(image):
                pushed = "+".join(gamma) if gamma else "_"
                out.append((q, p, f"{token_text(a)}, {x} / {pushed}"))
        return out
    if isinstance(m, QuantumMachine):
        return []
    raise TypeError(f"unsupported machine type {type(m).__name__}")


def export_dot(m) -> str:
    """Render states as nodes (accepting ones double-circled), transitions as labeled edges."""
    if isinstance(m, QuantumMachine):
        states = list(m.states)
        initial = m.initial_state
    else:
        states = sorted(m.states)
        initial = m.initial
    lines = ["digraph machine {", "  rankdir=LR;"]
    for q in states:
        shape = "doublecircle" if q in m.accepting else "circle"
        lines.append(f"  {_quote(q)} [shape={shape}];")
    lines.append('  "__start__" [shape=point];')
    lines.append(f'  "__start__" -> {_quote(initial)};')
    for q, r, label in _edges(m):
        lines.append(f"  {_quote(q)} -> {_quote(r)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
