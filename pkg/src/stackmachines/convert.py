"""Constructive conversions between the two pushdown presentations.

Going to the stack-operation presentation, each classical transition becomes a
read / pop / push-chain through fresh auxiliary states, plus a drain gadget
that lets accepting runs empty their stack (classical acceptance ignores
leftover stack contents, the stack-operation semantics does not).  Going back,
stack operations become epsilon moves that rewrite the stack top, with a fresh
bottom sentinel and a final gadget that fires only once the simulated stack is
empty again.
"""

from __future__ import annotations

from .errors import MachineValidationError
from .machines import PdaI, PdaII, check_machine
from .tokens import EPSILON, Epsilon, pop, push, token_key


def _freshener(taken: set[str]):
    taken = set(taken)

    def fresh(base: str) -> str:
        name = base
        while name in taken:
            name += "x"
        taken.add(name)
        return name

    return fresh


def _sorted_pda1_transitions(m: PdaI):
    def key(item):
        (q, a, x), (p, gamma) = item
        return (q, token_key(a), x, p, gamma)

    flat = [
        ((q, a, x), target)
        for (q, a, x), image in m.delta.items()
        for target in sorted(image)
    ]
    return sorted(flat, key=key)


def pda1_to_pda2(m: PdaI) -> PdaII:
    """Simulate a classical pushdown automaton in the stack-operation presentation.

    For a transition (p, X1..Xn) in delta(q, a, X) the image machine reads a,
    pops X, then pushes Xn, ..., X1 through a fresh chain (so X1 ends up on
    top).  A fresh initial state pushes the start symbol first, and a fresh
    accepting sink drains whatever the classical machine would have left on
    its stack.  Auxiliary states are fresh per source transition.
    """
    check_machine(m)
    fresh = _freshener(m.states)
    init = fresh("qN")
    drain = fresh("qF")

    delta: dict = {}

    def add(q, tok, r):
        delta.setdefault((q, tok), set()).add(r)

    add(init, push(m.initial_stack), m.initial)
    for ti, ((q, a, x), (p, gamma)) in enumerate(_sorted_pda1_transitions(m)):
        head = fresh(f"t{ti}a")
        add(q, a, head)
        if not gamma:
            add(head, pop(x), p)
            continue
        cur = fresh(f"t{ti}b")
        add(head, pop(x), cur)
        for k in range(len(gamma) - 1, 0, -1):
            nxt = fresh(f"t{ti}c{k}")
            add(cur, push(gamma[k]), nxt)
            cur = nxt
        add(cur, push(gamma[0]), p)
    for f in sorted(m.accepting):
        add(f, EPSILON, drain)
    for sym in sorted(m.stack_alphabet):
        add(drain, pop(sym), drain)

    out = PdaII(
        states=frozenset(q for (q, _tok) in delta) | {r for image in delta.values() for r in image} | m.states,
        input_alphabet=m.input_alphabet,
        stack_alphabet=m.stack_alphabet,
        delta={k: frozenset(v) for k, v in delta.items()},
        initial=init,
        accepting=frozenset({drain}),
    )
    check_machine(out)
    return out


def pda2_to_pda1(m: PdaII, bottom: str = "Z0") -> PdaI:
    """Simulate a stack-operation pushdown automaton classically.

    ``bottom`` is the fresh initial stack sentinel; input and epsilon moves
    preserve the stack top, pops and pushes become top rewrites, and a fresh
    accepting state is reachable only with the bare sentinel on the stack,
    which enforces the end-empty stack condition of the source semantics.
    """
    check_machine(m)
    if bottom in m.stack_alphabet or bottom in m.input_alphabet:
        raise MachineValidationError(
            [f"sentinel {bottom!r} collides with a declared symbol; pick a different one"]
        )
    fresh = _freshener(m.states)
    final = fresh("qZ")
    gamma_all = sorted(m.stack_alphabet | {bottom})

    delta: dict = {}

    def add(q, a, x, p, pushed):
        delta.setdefault((q, a, x), set()).add((p, tuple(pushed)))

    for (q, tok), image in sorted(m.delta.items(), key=lambda kv: (kv[0][0], token_key(kv[0][1]))):
        for r in sorted(image):
            if isinstance(tok, (str, Epsilon)):
                for x in gamma_all:
                    add(q, tok, x, r, (x,))
            elif tok.op == "pop":
                add(q, EPSILON, tok.symbol, r, ())
            else:
                for x in gamma_all:
                    add(q, EPSILON, x, r, (tok.symbol, x))
    for f in sorted(m.accepting):
        add(f, EPSILON, bottom, final, (bottom,))

    out = PdaI(
        states=m.states | {final},
        input_alphabet=m.input_alphabet,
        stack_alphabet=frozenset(gamma_all),
        delta={k: frozenset(v) for k, v in delta.items()},
        initial=m.initial,
        initial_stack=bottom,
        accepting=frozenset({final}),
    )
    check_machine(out)
    return out
