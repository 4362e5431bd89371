"""The line-oriented machine description format (``.sm`` files).

A file is a ``machine KIND`` header, declaration sections, and transition or
matrix blocks.  Lines whose first non-blank character is ``#`` are comments
(only whole-line comments exist, so ``#`` itself can be an input symbol).
``_`` always denotes epsilon.  Parsing then serializing then parsing is the
identity on the abstract machine.

    machine pda2
    states q0 q1 qa
    initial q0
    accept qa
    input 0 1
    stack Z0
    trans:
    q0 0 -> {q0 q1}
    q1 push:Z0 -> {qa}

Transition shapes per kind:
  twostack    from TOKEN -> to          TOKEN: input, tape:t, or a pair token
  dpda2       from TOKEN -> to          TOKEN: input, push:X, pop:X
  pda2        from TOKEN -> {to ...}    TOKEN: input, _, push:X, pop:X
  pda1        from A X -> {to/G ...}    A: input or _; G: '+'-joined push string or _
Quantum kinds have no transitions; each token instead carries a matrix block
``matrix TOKEN:`` followed by one row of ``a+bi`` literals per state.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import ParseError
from .machines import (
    Alphabets,
    DpdaII,
    PdaI,
    PdaII,
    TwoStackMachine,
    validate_machine,
)
from .quantum import SINGLE, TWO, QuantumMachine, UnitaryFamily
from .tokens import EPSILON, PairOp, StackOp, token_key, token_text

KINDS = ("twostack", "pda1", "pda2", "dpda2", "qpda2", "q2sm")

_SECTION_WORDS = ("states", "initial", "accept", "input", "stack", "tape", "initialstack")
_OP_RE = re.compile(r"(push|pop)([12]?):(.+)$")


def machine_kind(m) -> str:
    if isinstance(m, TwoStackMachine):
        return "twostack"
    if isinstance(m, PdaI):
        return "pda1"
    if isinstance(m, PdaII):
        return "pda2"
    if isinstance(m, DpdaII):
        return "dpda2"
    if isinstance(m, QuantumMachine):
        return "qpda2" if m.flavor == SINGLE else "q2sm"
    raise TypeError(f"unsupported machine type {type(m).__name__}")


def _words(line: str):
    return [(mo.group(0), mo.start() + 1) for mo in re.finditer(r"\S+", line)]


def parse_op_token(word: str, lineno: int | None = None, col: int | None = None) -> StackOp:
    mo = _OP_RE.fullmatch(word)
    if not mo:
        raise ParseError(f"not a stack operation: {word!r}", lineno, col)
    op, tag, sym = mo.groups()
    return StackOp(op, sym, int(tag) if tag else None)


def parse_pair_token(word: str, lineno: int | None = None, col: int | None = None) -> PairOp:
    if not (word.startswith("(") and word.endswith(")")):
        raise ParseError(f"not a pair token: {word!r}", lineno, col)
    parts = word[1:-1].split(",")
    if len(parts) != 2:
        raise ParseError(f"a pair token has exactly two components: {word!r}", lineno, col)
    sides = []
    for want, part in zip((1, 2), parts):
        if part == "_":
            sides.append(None)
            continue
        op = parse_op_token(part, lineno, col)
        if op.stack != want:
            raise ParseError(f"component {part!r} must act on stack {want}", lineno, col)
        sides.append(op)
    if sides[0] is None and sides[1] is None:
        raise ParseError("a pair token must act on at least one stack", lineno, col)
    return PairOp(sides[0], sides[1])


def parse_complex(word: str, lineno: int | None = None, col: int | None = None) -> complex:
    """Parse ``a``, ``bi``, or ``a+bi`` decimal literals (scientific notation allowed)."""
    text = word
    try:
        if not text.endswith("i"):
            return complex(float(text), 0.0)
        body = text[:-1]
        split = None
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                split = k
                break
        if split is None:
            imag = body if body not in ("", "+", "-") else body + "1"
            return complex(0.0, float(imag))
        real = body[:split]
        imag = body[split:]
        if imag in ("+", "-"):
            imag += "1"
        return complex(float(real), float(imag))
    except ValueError:
        raise ParseError(f"bad complex literal {word!r}", lineno, col) from None


def format_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


class _Reader:
    def __init__(self, text: str):
        self.rows = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            self.rows.append((lineno, _words(raw)))
        self.pos = 0

    def peek(self):
        return self.rows[self.pos] if self.pos < len(self.rows) else None

    def take(self):
        row = self.peek()
        if row is not None:
            self.pos += 1
        return row


def parse_machine(text: str):
    """Parse machine text; raises ParseError with a location on any problem."""
    reader = _Reader(text)
    row = reader.take()
    if row is None:
        raise ParseError("empty machine description")
    lineno, words = row
    if len(words) != 2 or words[0][0] != "machine":
        raise ParseError("expected 'machine KIND' header", lineno, words[0][1])
    kind = words[1][0]
    if kind not in KINDS:
        raise ParseError(f"unknown machine kind {kind!r}; expected one of {', '.join(KINDS)}", lineno, words[1][1])

    sections: dict[str, list[str]] = {}
    section_line: dict[str, int] = {}
    while True:
        row = reader.peek()
        if row is None:
            break
        lineno, words = row
        head = words[0][0]
        if head not in _SECTION_WORDS:
            break
        reader.take()
        if head in sections:
            raise ParseError(f"duplicate section {head!r}", lineno, words[0][1])
        sections[head] = [w for w, _c in words[1:]]
        section_line[head] = lineno

    for required in ("states", "initial", "input"):
        if required not in sections:
            raise ParseError(f"missing required section {required!r}")
    states = sections["states"]
    if len(set(states)) != len(states):
        raise ParseError("duplicate state names", section_line["states"])
    if len(sections["initial"]) != 1:
        raise ParseError("'initial' names exactly one state", section_line["initial"])
    initial = sections["initial"][0]
    accept = sections.get("accept", [])
    inputs = sections["input"]
    stack = sections.get("stack", [])
    tape = sections.get("tape", [])

    state_set = set(states)
    for name, sec in ((initial, "initial"), *((a, "accept") for a in accept)):
        if name not in state_set:
            raise ParseError(f"undeclared state {name!r}", section_line.get(sec, section_line["states"]))
    if tape and kind not in ("twostack", "q2sm"):
        raise ParseError(f"machine kind {kind!r} has no tape symbols", section_line["tape"])

    initial_stack = None
    if kind == "pda1":
        if "initialstack" not in sections or len(sections["initialstack"]) != 1:
            raise ParseError("pda1 machines need 'initialstack SYMBOL'", section_line.get("initialstack"))
        initial_stack = sections["initialstack"][0]
        if initial_stack not in set(stack):
            raise ParseError(
                f"initial stack symbol {initial_stack!r} is not declared", section_line["initialstack"]
            )
    elif "initialstack" in sections:
        raise ParseError(f"machine kind {kind!r} has no initial stack symbol", section_line["initialstack"])

    ctx = _Context(kind, states, initial, accept, inputs, stack, tape, initial_stack)
    if kind in ("qpda2", "q2sm"):
        machine = _parse_quantum(reader, ctx)
    else:
        machine = _parse_classical(reader, ctx)

    leftover = reader.peek()
    if leftover is not None:
        raise ParseError(f"unexpected line starting with {leftover[1][0][0]!r}", leftover[0], leftover[1][0][1])

    problems = validate_machine(machine)
    if problems:
        raise ParseError("invalid machine: " + "; ".join(problems))
    return machine


class _Context:
    def __init__(self, kind, states, initial, accept, inputs, stack, tape, initial_stack=None):
        self.kind = kind
        self.states = states
        self.initial = initial
        self.accept = accept
        self.inputs = set(inputs)
        self.stack = set(stack)
        self.tape = set(tape)
        self.initial_stack = initial_stack

    def need_state(self, name, lineno, col):
        if name not in set(self.states):
            raise ParseError(f"undeclared state {name!r}", lineno, col)
        return name

    def need_stack_symbol(self, name, lineno, col):
        if name not in self.stack:
            raise ParseError(f"undeclared stack symbol {name!r}", lineno, col)
        return name


def _parse_token(word, ctx: _Context, lineno, col, *, pairs: bool, allow_eps: bool):
    """A transition token: input symbol, epsilon, tape symbol, stack op, or pair."""
    if word == "_":
        if not allow_eps:
            raise ParseError("epsilon token not allowed here", lineno, col)
        return EPSILON
    if word.startswith("("):
        if not pairs:
            raise ParseError("pair tokens are only for two-stack machines", lineno, col)
        tok = parse_pair_token(word, lineno, col)
        for side in (tok.first, tok.second):
            if side is not None:
                ctx.need_stack_symbol(side.symbol, lineno, col)
        return tok
    if word.startswith("tape:"):
        sym = word[len("tape:"):]
        if sym not in ctx.tape:
            raise ParseError(f"undeclared tape symbol {sym!r}", lineno, col)
        return sym
    if _OP_RE.fullmatch(word):
        if pairs:
            raise ParseError("two-stack machines use pair tokens, e.g. (push1:X,_)", lineno, col)
        tok = parse_op_token(word, lineno, col)
        if tok.stack is not None:
            raise ParseError("single-stack operations take no stack index", lineno, col)
        ctx.need_stack_symbol(tok.symbol, lineno, col)
        return tok
    if word in ctx.inputs:
        return word
    raise ParseError(f"undeclared input symbol {word!r}", lineno, col)


def _split_arrow(words, lineno):
    for k, (w, _c) in enumerate(words):
        if w == "->":
            return words[:k], words[k + 1:]
    raise ParseError("expected '->' in transition", lineno, words[0][1])


def _target_set(rhs, lineno):
    if not rhs:
        raise ParseError("missing transition target", lineno)
    text = " ".join(w for w, _c in rhs)
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError("nondeterministic targets are written {name ...}", lineno, rhs[0][1])
    return text[1:-1].split(), rhs[0][1]


def _parse_classical(reader: _Reader, ctx: _Context):
    row = reader.peek()
    delta: dict = {}
    if row is not None and row[1][0][0] == "trans:":
        reader.take()
        while True:
            row = reader.peek()
            if row is None:
                break
            lineno, words = row
            if words[0][0] == "trans:":
                raise ParseError("duplicate trans: block", lineno, words[0][1])
            if words[0][0] == "matrix":
                break
            reader.take()
            lhs, rhs = _split_arrow(words, lineno)
            if ctx.kind == "pda1":
                _parse_pda1_line(lhs, rhs, ctx, delta, lineno)
            else:
                _parse_simple_line(lhs, rhs, ctx, delta, lineno)
    return _build_classical(ctx, delta)


def _parse_simple_line(lhs, rhs, ctx: _Context, delta, lineno):
    if len(lhs) != 2:
        raise ParseError("transition reads 'from TOKEN -> ...'", lineno, lhs[0][1] if lhs else None)
    (src, src_col), (tok_word, tok_col) = lhs
    ctx.need_state(src, lineno, src_col)
    pairs = ctx.kind == "twostack"
    allow_eps = ctx.kind == "pda2"
    tok = _parse_token(tok_word, ctx, lineno, tok_col, pairs=pairs, allow_eps=allow_eps)
    if ctx.kind == "pda2":
        names, col = _target_set(rhs, lineno)
        targets = frozenset(ctx.need_state(nm, lineno, col) for nm in names)
        if not targets:
            raise ParseError("empty target set", lineno, col)
        key = (src, tok)
        delta[key] = delta.get(key, frozenset()) | targets
    else:
        if len(rhs) != 1:
            raise ParseError("deterministic transitions name exactly one target", lineno)
        name, col = rhs[0]
        target = ctx.need_state(name, lineno, col)
        key = (src, tok)
        if key in delta and delta[key] != target:
            raise ParseError(f"conflicting transition for ({src}, {token_text(tok, frozenset(ctx.tape))})", lineno)
        delta[key] = target


def _parse_pda1_line(lhs, rhs, ctx: _Context, delta, lineno):
    if len(lhs) != 3:
        raise ParseError("transition reads 'from INPUT STACKTOP -> {to/PUSH ...}'", lineno, lhs[0][1] if lhs else None)
    (src, src_col), (a_word, a_col), (x_word, x_col) = lhs
    ctx.need_state(src, lineno, src_col)
    if a_word == "_":
        a = EPSILON
    elif a_word in ctx.inputs:
        a = a_word
    else:
        raise ParseError(f"undeclared input symbol {a_word!r}", lineno, a_col)
    x = ctx.need_stack_symbol(x_word, lineno, x_col)
    names, col = _target_set(rhs, lineno)
    if not names:
        raise ParseError("empty target set", lineno, col)
    targets = set()
    for nm in names:
        if "/" not in nm:
            raise ParseError(f"target {nm!r} must be written state/PUSH (use _ for an empty push)", lineno, col)
        state_name, gamma_text = nm.split("/", 1)
        ctx.need_state(state_name, lineno, col)
        if gamma_text == "_":
            gamma = ()
        else:
            gamma = tuple(gamma_text.split("+"))
            for sym in gamma:
                ctx.need_stack_symbol(sym, lineno, col)
        targets.add((state_name, gamma))
    key = (src, a, x)
    delta[key] = delta.get(key, frozenset()) | frozenset(targets)


def _build_classical(ctx: _Context, delta):
    common = dict(
        states=frozenset(ctx.states),
        initial=ctx.initial,
        accepting=frozenset(ctx.accept),
    )
    if ctx.kind == "twostack":
        return TwoStackMachine(
            alphabets=Alphabets(ctx.inputs, ctx.stack, ctx.tape), delta=delta, **common
        )
    if ctx.kind == "pda1":
        return PdaI(
            input_alphabet=frozenset(ctx.inputs),
            stack_alphabet=frozenset(ctx.stack),
            delta=delta,
            initial_stack=ctx.initial_stack,
            **common,
        )
    if ctx.kind == "pda2":
        return PdaII(
            input_alphabet=frozenset(ctx.inputs),
            stack_alphabet=frozenset(ctx.stack),
            delta=delta,
            **common,
        )
    return DpdaII(
        input_alphabet=frozenset(ctx.inputs),
        stack_alphabet=frozenset(ctx.stack),
        delta=delta,
        **common,
    )


def _parse_quantum(reader: _Reader, ctx: _Context):
    dim = len(ctx.states)
    matrices: dict = {}
    while True:
        row = reader.peek()
        if row is None:
            break
        lineno, words = row
        if words[0][0] != "matrix":
            break
        reader.take()
        rest = " ".join(w for w, _c in words[1:])
        if not rest.endswith(":"):
            raise ParseError("matrix header reads 'matrix TOKEN:'", lineno, words[0][1])
        tok_word = rest[:-1].strip()
        pairs = ctx.kind == "q2sm"
        tok = _parse_token(tok_word, ctx, lineno, words[1][1], pairs=pairs, allow_eps=False)
        if tok in matrices:
            raise ParseError(f"duplicate matrix for token {tok_word}", lineno)
        rows = []
        for _k in range(dim):
            row = reader.take()
            if row is None:
                raise ParseError(f"matrix for {tok_word} needs {dim} rows", lineno)
            rlineno, rwords = row
            if len(rwords) != dim:
                raise ParseError(f"matrix row needs {dim} entries, got {len(rwords)}", rlineno, rwords[0][1])
            rows.append([parse_complex(w, rlineno, c) for w, c in rwords])
        matrices[tok] = np.array(rows, dtype=complex)

    flavor = SINGLE if ctx.kind == "qpda2" else TWO
    return QuantumMachine(
        states=tuple(ctx.states),
        alphabets=Alphabets(ctx.inputs, ctx.stack, ctx.tape),
        unitaries=UnitaryFamily(dim, matrices),
        initial=ctx.states.index(ctx.initial),
        accepting=frozenset(ctx.accept),
        flavor=flavor,
    )


def serialize_machine(m) -> str:
    """Canonical text for a machine; parse(serialize(m)) == m."""
    kind = machine_kind(m)
    quantum = isinstance(m, QuantumMachine)
    states = list(m.states) if quantum else sorted(m.states)
    if quantum:
        inputs = sorted(m.alphabets.input)
        stack = sorted(m.alphabets.stack)
        tape = sorted(m.alphabets.tape)
        initial = m.initial_state
    elif isinstance(m, TwoStackMachine):
        inputs = sorted(m.alphabets.input)
        stack = sorted(m.alphabets.stack)
        tape = sorted(m.alphabets.tape)
        initial = m.initial
    else:
        inputs = sorted(m.input_alphabet)
        stack = sorted(m.stack_alphabet)
        tape = []
        initial = m.initial

    lines = [f"machine {kind}"]
    lines.append("states " + " ".join(states))
    lines.append(f"initial {initial}")
    lines.append(("accept " + " ".join(sorted(m.accepting))).rstrip())
    lines.append("input " + " ".join(inputs))
    if stack:
        lines.append("stack " + " ".join(stack))
    if tape:
        lines.append("tape " + " ".join(tape))
    if isinstance(m, PdaI):
        lines.append(f"initialstack {m.initial_stack}")

    tape_set = frozenset(tape)
    if quantum:
        for tok in sorted(m.unitaries.matrices, key=token_key):
            lines.append(f"matrix {token_text(tok, tape_set)}:")
            for row in np.asarray(m.unitaries.matrices[tok]):
                lines.append(" ".join(format_complex(complex(z)) for z in row))
        return "\n".join(lines) + "\n"

    trans = _transition_lines(m, tape_set)
    if trans:
        lines.append("trans:")
        lines.extend(trans)
    return "\n".join(lines) + "\n"


def _transition_lines(m, tape_set):
    out = []
    if isinstance(m, PdaI):
        for (q, a, x), image in sorted(m.delta.items(), key=lambda kv: (kv[0][0], token_key(kv[0][1]), kv[0][2])):
            targets = []
            for p, gamma in sorted(image):
                targets.append(f"{p}/{'+'.join(gamma) if gamma else '_'}")
            out.append(f"{q} {token_text(a)} {x} -> {{{' '.join(targets)}}}")
        return out
    if isinstance(m, PdaII):
        for (q, tok), image in sorted(m.delta.items(), key=lambda kv: (kv[0][0], token_key(kv[0][1]))):
            out.append(f"{q} {token_text(tok)} -> {{{' '.join(sorted(image))}}}")
        return out
    for (q, tok), r in sorted(m.delta.items(), key=lambda kv: (kv[0][0], token_key(kv[0][1]))):
        out.append(f"{q} {token_text(tok, tape_set)} -> {r}")
    return out
