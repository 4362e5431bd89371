"""Annotation tokens: stack operations, paired operations, and the epsilon marker.

An annotation string interleaves plain input symbols (bare ``str``), stack
operations, paired two-stack operations, tape symbols (also bare ``str``,
distinguished from input symbols by the machine's alphabets) and the epsilon
marker.  Projecting an annotation string onto one of those alphabets recovers
the substring of interest, e.g. the consumed input or the stack activity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

PUSH = "push"
POP = "pop"


@dataclass(frozen=True)
class Epsilon:
    """The empty annotation token, written ``_`` in text form."""

    def __repr__(self) -> str:
        return "EPSILON"


EPSILON = Epsilon()


@dataclass(frozen=True)
class StackOp:
    """A single push or pop of ``symbol``, optionally tagged with a stack index."""

    op: str
    symbol: str
    stack: int | None = None

    def __post_init__(self):
        if self.op not in (PUSH, POP):
            raise ValueError(f"stack operation must be {PUSH!r} or {POP!r}, got {self.op!r}")
        if self.stack not in (None, 1, 2):
            raise ValueError(f"stack index must be 1, 2 or None, got {self.stack!r}")

    @property
    def text(self) -> str:
        tag = "" if self.stack is None else str(self.stack)
        return f"{self.op}{tag}:{self.symbol}"

    def __repr__(self) -> str:
        return f"<{self.text}>"


@dataclass(frozen=True)
class PairOp:
    """A simultaneous action on both stacks; either side may be epsilon (None)."""

    first: StackOp | None
    second: StackOp | None

    def __post_init__(self):
        if self.first is None and self.second is None:
            raise ValueError("a pair token must act on at least one stack")
        if self.first is not None and self.first.stack != 1:
            raise ValueError("first component must be a stack-1 operation")
        if self.second is not None and self.second.stack != 2:
            raise ValueError("second component must be a stack-2 operation")

    @property
    def text(self) -> str:
        a = "_" if self.first is None else self.first.text
        b = "_" if self.second is None else self.second.text
        return f"({a},{b})"

    def __repr__(self) -> str:
        return f"<{self.text}>"


Token = Union[str, StackOp, PairOp, Epsilon]


def push(symbol: str, stack: int | None = None) -> StackOp:
    return StackOp(PUSH, symbol, stack)


def pop(symbol: str, stack: int | None = None) -> StackOp:
    return StackOp(POP, symbol, stack)


def stack_tokens(gamma: Iterable[str], stack: int | None = None) -> frozenset[StackOp]:
    """All push/pop tokens over the stack alphabet ``gamma``."""
    out = set()
    for sym in gamma:
        out.add(push(sym, stack))
        out.add(pop(sym, stack))
    return frozenset(out)


def pair_tokens(gamma: Iterable[str]) -> frozenset[PairOp]:
    """All paired two-stack tokens over ``gamma``: both sides act, or one is epsilon."""
    ops1 = sorted(stack_tokens(gamma, 1), key=token_key)
    ops2 = sorted(stack_tokens(gamma, 2), key=token_key)
    out = set()
    for a in ops1:
        out.add(PairOp(a, None))
        for b in ops2:
            out.add(PairOp(a, b))
    for b in ops2:
        out.add(PairOp(None, b))
    return frozenset(out)


def project(tokens: Iterable[Token], target) -> tuple[Token, ...]:
    """Keep only the tokens belonging to ``target``, preserving order."""
    target = frozenset(target)
    return tuple(t for t in tokens if t in target)


def token_text(tok: Token, tape: frozenset[str] = frozenset()) -> str:
    """Render a token in the shared text syntax (tape symbols need the machine's tape set)."""
    if isinstance(tok, Epsilon):
        return "_"
    if isinstance(tok, (StackOp, PairOp)):
        return tok.text
    if tok in tape:
        return f"tape:{tok}"
    return tok


def annotation_text(tokens: Iterable[Token], tape: frozenset[str] = frozenset()) -> str:
    return " ".join(token_text(t, tape) for t in tokens)


def token_key(tok: Token):
    """A total order over mixed token types, for deterministic iteration."""
    if isinstance(tok, Epsilon):
        return (0, "", "", 0)
    if isinstance(tok, str):
        return (1, tok, "", 0)
    if isinstance(tok, StackOp):
        return (2, tok.symbol, tok.op, tok.stack or 0)
    if isinstance(tok, PairOp):
        fk = ("", "", 0) if tok.first is None else token_key(tok.first)[1:]
        sk = ("", "", 0) if tok.second is None else token_key(tok.second)[1:]
        return (3,) + fk + sk
    raise TypeError(f"not a token: {tok!r}")


def iter_pair_components(pairs: Iterable[PairOp]) -> tuple[tuple[StackOp, ...], tuple[StackOp, ...]]:
    """Split pair tokens into the stack-1 and stack-2 operation sequences, dropping epsilons."""
    firsts = []
    seconds = []
    for p in pairs:
        if not isinstance(p, PairOp):
            raise TypeError(f"not a pair token: {p!r}")
        if p.first is not None:
            firsts.append(p.first)
        if p.second is not None:
            seconds.append(p.second)
    return tuple(firsts), tuple(seconds)
