"""Subset construction over the extended alphabet, and the projection language.

A PdaII read over the joint alphabet of input symbols and stack operations is
an NFA (with epsilon moves); the standard subset construction therefore yields
a deterministic machine with the same extended-alphabet language, and with it
the same recognized input language.  Subset states get opaque names d0, d1,
... in discovery order; their member sets are available separately.
"""

from __future__ import annotations

from collections import deque

from .errors import CapExceededError
from .machines import DpdaII, PdaII, check_machine
from .recognition import eps_closure_pda2, step_pda2
from .tokens import pop, push, token_key

PROJECTION_CAP = 10


def eps_closure(m: PdaII, states) -> frozenset[str]:
    """Smallest superset of ``states`` closed under epsilon moves."""
    return eps_closure_pda2(m, states)


def _extended_tokens(m: PdaII) -> list:
    toks: list = sorted(m.input_alphabet)
    for sym in sorted(m.stack_alphabet):
        toks.append(push(sym))
        toks.append(pop(sym))
    return sorted(toks, key=token_key)


def _explore(m: PdaII):
    tokens = _extended_tokens(m)
    start = eps_closure(m, {m.initial})
    names: dict[frozenset[str], str] = {start: "d0"}
    delta: dict = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for tok in tokens:
            succ = step_pda2(m, subset, tok)
            if not succ:
                continue
            if succ not in names:
                names[succ] = f"d{len(names)}"
                queue.append(succ)
            delta[(names[subset], tok)] = names[succ]
    return names, delta, names[start]


def subset_construct(m: PdaII) -> DpdaII:
    """Determinize over the extended alphabet; the stack alphabet is unchanged."""
    check_machine(m)
    names, delta, start = _explore(m)
    out = DpdaII(
        states=frozenset(names.values()),
        input_alphabet=m.input_alphabet,
        stack_alphabet=m.stack_alphabet,
        delta=delta,
        initial=start,
        accepting=frozenset(name for subset, name in names.items() if subset & m.accepting),
    )
    check_machine(out)
    return out


def subset_members(m: PdaII) -> dict[str, frozenset[str]]:
    """Map each constructed state name to the source states it stands for."""
    check_machine(m)
    names, _delta, _start = _explore(m)
    return {name: subset for subset, name in names.items()}


def projection_language(m, max_ext_len: int, *, cap: int = PROJECTION_CAP) -> frozenset[str]:
    """Input strings exposed by bounded extended-alphabet enumeration.

    Walks every string over the extended alphabet up to ``max_ext_len`` whose
    stack-operation projection is a valid prefix, keeps those the machine
    accepts as a plain finite automaton with an empty simulated stack (i.e.
    the stack projection is fully valid), and projects the survivors onto the
    input alphabet.  A length-bounded under-approximation of the recognized
    language.
    """
    if max_ext_len > cap:
        raise CapExceededError(max_ext_len, cap)
    if isinstance(m, DpdaII):
        m = m.as_pda2()
    check_machine(m)
    inputs = sorted(m.input_alphabet)
    gamma = sorted(m.stack_alphabet)
    found: set[str] = set()

    def walk(states: frozenset[str], stack: tuple, consumed: str, left: int) -> None:
        if not stack and states & m.accepting:
            found.add(consumed)
        if left == 0 or len(stack) > left or not states:
            return
        for a in inputs:
            nxt = step_pda2(m, states, a)
            if nxt:
                walk(nxt, stack, consumed + a, left - 1)
        for sym in gamma:
            nxt = step_pda2(m, states, push(sym))
            if nxt:
                walk(nxt, stack + (sym,), consumed, left - 1)
        if stack:
            nxt = step_pda2(m, states, pop(stack[-1]))
            if nxt:
                walk(nxt, stack[:-1], consumed, left - 1)

    walk(eps_closure(m, {m.initial}), (), "", max_ext_len)
    return frozenset(found)
