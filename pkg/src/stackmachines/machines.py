"""Machine definitions and well-formedness validation.

All machine values are plain frozen dataclasses and are treated as immutable
after construction; every operation in the package is a pure function of its
inputs, so sharing machines across threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import MachineValidationError
from .tokens import EPSILON, Epsilon, PairOp, StackOp, Token, pair_tokens, stack_tokens, token_text

# Characters that the file format claims for itself; no declared name may
# contain them.  '_' alone is the epsilon marker and '->' the transition arrow.
RESERVED_CHARS = frozenset(':(){}/+,"')


@dataclass(frozen=True)
class Alphabets:
    """Input, stack, and tape alphabets of a machine (pairwise disjoint)."""

    input: frozenset[str]
    stack: frozenset[str] = frozenset()
    tape: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "input", frozenset(self.input))
        object.__setattr__(self, "stack", frozenset(self.stack))
        object.__setattr__(self, "tape", frozenset(self.tape))


@dataclass(frozen=True)
class Dfa:
    """A deterministic finite automaton over plain input symbols."""

    states: frozenset[str]
    alphabet: frozenset[str]
    delta: Mapping[tuple[str, str], str]
    initial: str
    accepting: frozenset[str]


@dataclass(frozen=True)
class TwoStackMachine:
    """Two-stack machine: deterministic per annotation token, existential over witnesses."""

    states: frozenset[str]
    alphabets: Alphabets
    delta: Mapping[tuple[str, Token], str]
    initial: str
    accepting: frozenset[str]

    def annotation_alphabet(self) -> frozenset[Token]:
        return (
            pair_tokens(self.alphabets.stack)
            | self.alphabets.input
            | self.alphabets.tape
        )


@dataclass(frozen=True)
class PdaI:
    """Classical pushdown automaton: reads (input-or-epsilon, stack top), rewrites the top.

    Transition images are sets of (state, pushed-string) pairs; pushed strings
    are tuples with their first symbol ending up on top of the stack.
    """

    states: frozenset[str]
    input_alphabet: frozenset[str]
    stack_alphabet: frozenset[str]
    delta: Mapping[tuple[str, "str | Epsilon", str], frozenset[tuple[str, tuple[str, ...]]]]
    initial: str
    initial_stack: str
    accepting: frozenset[str]


@dataclass(frozen=True)
class PdaII:
    """Pushdown automaton presented as an NFA over input symbols, epsilon, and stack operations."""

    states: frozenset[str]
    input_alphabet: frozenset[str]
    stack_alphabet: frozenset[str]
    delta: Mapping[tuple[str, Token], frozenset[str]]
    initial: str
    accepting: frozenset[str]

    def token_alphabet(self) -> frozenset[Token]:
        return self.input_alphabet | stack_tokens(self.stack_alphabet) | {EPSILON}


@dataclass(frozen=True)
class DpdaII:
    """Deterministic variant of PdaII: no epsilon moves, at most one successor per token."""

    states: frozenset[str]
    input_alphabet: frozenset[str]
    stack_alphabet: frozenset[str]
    delta: Mapping[tuple[str, Token], str]
    initial: str
    accepting: frozenset[str]

    def as_pda2(self) -> PdaII:
        """View this machine as a PdaII with singleton transition images."""
        return PdaII(
            states=self.states,
            input_alphabet=self.input_alphabet,
            stack_alphabet=self.stack_alphabet,
            delta={k: frozenset({v}) for k, v in self.delta.items()},
            initial=self.initial,
            accepting=self.accepting,
        )


def _name_problems(role: str, name) -> list[str]:
    if not isinstance(name, str) or not name:
        return [f"{role} name must be a nonempty string, got {name!r}"]
    out = []
    if name == "_":
        out.append(f"{role} name '_' is reserved for epsilon")
    if name == "->":
        out.append(f"{role} name '->' is reserved for the transition arrow")
    if any(c.isspace() for c in name):
        out.append(f"{role} name {name!r} contains whitespace")
    bad = sorted(set(name) & RESERVED_CHARS)
    if bad:
        out.append(f"{role} name {name!r} contains reserved characters {''.join(bad)!r}")
    return out


def _alphabet_problems(alpha: Alphabets) -> list[str]:
    out = []
    if not alpha.input:
        out.append("input alphabet is empty")
    for sym in sorted(alpha.input):
        out.extend(_name_problems("input symbol", sym))
        if isinstance(sym, str) and len(sym) != 1:
            out.append(f"input symbol {sym!r} must be a single character")
    for sym in sorted(alpha.stack):
        out.extend(_name_problems("stack symbol", sym))
        if isinstance(sym, str) and sym.startswith("#"):
            out.append(f"stack symbol {sym!r} may not start with '#'")
    for sym in sorted(alpha.tape):
        out.extend(_name_problems("tape symbol", sym))
        if isinstance(sym, str) and sym.startswith("#"):
            out.append(f"tape symbol {sym!r} may not start with '#'")
    if alpha.input & alpha.stack:
        out.append(f"input and stack alphabets overlap: {sorted(alpha.input & alpha.stack)}")
    if alpha.input & alpha.tape:
        out.append(f"input and tape alphabets overlap: {sorted(alpha.input & alpha.tape)}")
    if alpha.stack & alpha.tape:
        out.append(f"stack and tape alphabets overlap: {sorted(alpha.stack & alpha.tape)}")
    return out


def _state_problems(states, initial, accepting) -> list[str]:
    out = []
    if not states:
        out.append("state set is empty")
    for q in sorted(states):
        out.extend(_name_problems("state", q))
        if isinstance(q, str) and q.startswith("#"):
            out.append(f"state name {q!r} may not start with '#'")
    if initial not in states:
        out.append(f"initial state {initial!r} is not a declared state")
    for q in sorted(accepting):
        if q not in states:
            out.append(f"accepting state {q!r} is not a declared state")
    return out


def _check_stack_op(op: StackOp, gamma: frozenset[str], where: str, want_stack) -> list[str]:
    out = []
    if op.symbol not in gamma:
        out.append(f"{where}: stack symbol {op.symbol!r} is not in the stack alphabet")
    if op.stack != want_stack:
        out.append(f"{where}: stack index {op.stack!r} not allowed here")
    return out


def validate_machine(m) -> list[str]:
    """Return a list of well-formedness violations; empty means the machine is valid."""
    if isinstance(m, TwoStackMachine):
        return _validate_two_stack(m)
    if isinstance(m, PdaI):
        return _validate_pda1(m)
    if isinstance(m, PdaII):
        return _validate_pda2(m)
    if isinstance(m, DpdaII):
        return _validate_dpda2(m)
    if isinstance(m, Dfa):
        return _validate_dfa(m)
    # Quantum machines know how to validate themselves; avoid a circular import.
    from .quantum import QuantumMachine, validate_quantum

    if isinstance(m, QuantumMachine):
        return validate_quantum(m)
    return [f"unknown machine type {type(m).__name__}"]


def check_machine(m) -> None:
    """Raise MachineValidationError if the machine is not well-formed."""
    problems = validate_machine(m)
    if problems:
        raise MachineValidationError(problems)


def _validate_dfa(m: Dfa) -> list[str]:
    out = _state_problems(m.states, m.initial, m.accepting)
    out.extend(_alphabet_problems(Alphabets(m.alphabet)))
    for (q, a), r in m.delta.items():
        where = f"transition ({q!r}, {a!r})"
        if q not in m.states:
            out.append(f"{where}: source state not declared")
        if r not in m.states:
            out.append(f"{where}: target state {r!r} not declared")
        if a not in m.alphabet:
            out.append(f"{where}: symbol {a!r} not in the input alphabet")
    return out


def _validate_two_stack(m: TwoStackMachine) -> list[str]:
    out = _state_problems(m.states, m.initial, m.accepting)
    out.extend(_alphabet_problems(m.alphabets))
    gamma = m.alphabets.stack
    for (q, tok), r in m.delta.items():
        where = f"transition ({q!r}, {token_text(tok, m.alphabets.tape)})"
        if q not in m.states:
            out.append(f"{where}: source state not declared")
        if r not in m.states:
            out.append(f"{where}: target state {r!r} not declared")
        if isinstance(tok, PairOp):
            if tok.first is not None:
                out.extend(_check_stack_op(tok.first, gamma, where, 1))
            if tok.second is not None:
                out.extend(_check_stack_op(tok.second, gamma, where, 2))
        elif isinstance(tok, str):
            if tok not in m.alphabets.input and tok not in m.alphabets.tape:
                out.append(f"{where}: symbol {tok!r} is neither an input nor a tape symbol")
        else:
            out.append(f"{where}: token {tok!r} not allowed for a two-stack machine")
    return out


def _validate_pda1(m: PdaI) -> list[str]:
    out = _state_problems(m.states, m.initial, m.accepting)
    out.extend(_alphabet_problems(Alphabets(m.input_alphabet, m.stack_alphabet)))
    if m.initial_stack not in m.stack_alphabet:
        out.append(f"initial stack symbol {m.initial_stack!r} is not in the stack alphabet")
    for (q, a, x), image in m.delta.items():
        where = f"transition ({q!r}, {token_text(a)}, {x!r})"
        if q not in m.states:
            out.append(f"{where}: source state not declared")
        if not isinstance(a, Epsilon) and a not in m.input_alphabet:
            out.append(f"{where}: symbol {a!r} not in the input alphabet")
        if x not in m.stack_alphabet:
            out.append(f"{where}: stack top {x!r} not in the stack alphabet")
        for p, gamma in image:
            if p not in m.states:
                out.append(f"{where}: target state {p!r} not declared")
            for sym in gamma:
                if sym not in m.stack_alphabet:
                    out.append(f"{where}: pushed symbol {sym!r} not in the stack alphabet")
    return out


def _validate_pda2(m: PdaII) -> list[str]:
    out = _state_problems(m.states, m.initial, m.accepting)
    out.extend(_alphabet_problems(Alphabets(m.input_alphabet, m.stack_alphabet)))
    for (q, tok), image in m.delta.items():
        where = f"transition ({q!r}, {token_text(tok)})"
        if q not in m.states:
            out.append(f"{where}: source state not declared")
        for r in image:
            if r not in m.states:
                out.append(f"{where}: target state {r!r} not declared")
        if isinstance(tok, StackOp):
            out.extend(_check_stack_op(tok, m.stack_alphabet, where, None))
        elif isinstance(tok, str):
            if tok not in m.input_alphabet:
                out.append(f"{where}: symbol {tok!r} not in the input alphabet")
        elif not isinstance(tok, Epsilon):
            out.append(f"{where}: token {tok!r} not allowed for a PDA-II")
    return out


def _validate_dpda2(m: DpdaII) -> list[str]:
    out = _state_problems(m.states, m.initial, m.accepting)
    out.extend(_alphabet_problems(Alphabets(m.input_alphabet, m.stack_alphabet)))
    for (q, tok), r in m.delta.items():
        where = f"transition ({q!r}, {token_text(tok)})"
        if q not in m.states:
            out.append(f"{where}: source state not declared")
        if not isinstance(r, str) or r not in m.states:
            out.append(f"{where}: target state {r!r} not declared")
        if isinstance(tok, Epsilon):
            out.append(f"{where}: epsilon moves are not allowed in a deterministic PDA-II")
        elif isinstance(tok, StackOp):
            out.extend(_check_stack_op(tok, m.stack_alphabet, where, None))
        elif isinstance(tok, str):
            if tok not in m.input_alphabet:
                out.append(f"{where}: symbol {tok!r} not in the input alphabet")
        else:
            out.append(f"{where}: token {tok!r} not allowed for a DPDA-II")
    return out


def embed_dfa_as_two_stack(d: Dfa) -> TwoStackMachine:
    """Embed a DFA as a two-stack machine with empty stack and tape alphabets.

    The embedded machine has only input-symbol transitions, so every run
    trivially satisfies the stack-validity condition and the accepted language
    is exactly the DFA's.
    """
    check_machine(d)
    m = TwoStackMachine(
        states=d.states,
        alphabets=Alphabets(d.alphabet),
        delta=dict(d.delta),
        initial=d.initial,
        accepting=d.accepting,
    )
    check_machine(m)
    return m
