"""Valid stack strings: matched-pop simulation, enumeration, and the generating grammar.

A push/pop sequence is valid when, starting from an empty stack, every pop
removes exactly the symbol it names from the top of the stack and the stack is
empty again at the end.  A paired two-stack sequence is valid when both of its
component projections are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceededError, MalformedInputError
from .grammar import Grammar
from .tokens import PUSH, PairOp, StackOp, iter_pair_components, pop, push

ENUMERATION_CAP = 12


@dataclass(frozen=True)
class StackTrace:
    """Step-by-step record of a single-stack simulation.

    ``steps`` holds one ``(position, stack_after)`` pair per processed
    operation, positions counted from 1.  ``illegal_at`` is the position of the
    first pop that missed (the simulation stops there); ``leftover`` is the
    final stack contents.
    """

    steps: tuple[tuple[int, tuple[str, ...]], ...]
    illegal_at: int | None
    leftover: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.illegal_at is None and not self.leftover

    @property
    def outcome(self) -> str:
        if self.illegal_at is not None:
            return f"illegal-pop-at({self.illegal_at})"
        if self.leftover:
            return f"nonempty-final({' '.join(self.leftover)})"
        return "valid"


def check_valid_single(ops: Sequence[StackOp]) -> StackTrace:
    """Simulate a single-stack operation sequence and report its validity.

    All operations must carry the same stack index (or all be untagged);
    anything else is malformed input rather than mere invalidity.
    """
    indices = set()
    for t in ops:
        if not isinstance(t, StackOp):
            raise MalformedInputError(f"not a stack operation: {t!r}")
        indices.add(t.stack)
    if len(indices) > 1:
        raise MalformedInputError(f"mixed stack indices in one sequence: {sorted(indices, key=str)}")

    stack: list[str] = []
    steps = []
    for pos, t in enumerate(ops, start=1):
        if t.op == PUSH:
            stack.append(t.symbol)
        else:
            if not stack or stack[-1] != t.symbol:
                steps.append((pos, tuple(stack)))
                return StackTrace(tuple(steps), pos, tuple(stack))
            stack.pop()
        steps.append((pos, tuple(stack)))
    return StackTrace(tuple(steps), None, tuple(stack))


def check_valid_two(pairs: Sequence[PairOp]) -> tuple[StackTrace, StackTrace]:
    """Check a paired sequence by checking both component projections."""
    firsts, seconds = iter_pair_components(pairs)
    return check_valid_single(firsts), check_valid_single(seconds)


def is_valid_pair_string(pairs: Sequence[PairOp]) -> bool:
    a, b = check_valid_two(pairs)
    return a.ok and b.ok


def valid_string_grammar(gamma: Iterable[str]) -> Grammar:
    """The context-free grammar of all valid strings over the stack alphabet.

    Productions: S -> empty, S -> S S, and S -> push:X S pop:X for each symbol.
    """
    gamma = sorted(set(gamma))
    if not gamma:
        raise ValueError("stack alphabet must be nonempty")
    rhss: list[tuple] = [(), ("S", "S")]
    for sym in gamma:
        rhss.append((push(sym), "S", pop(sym)))
    return Grammar(start="S", productions={"S": rhss})


def enumerate_valid(
    gamma: Iterable[str], max_len: int, *, cap: int = ENUMERATION_CAP
) -> frozenset[tuple[StackOp, ...]]:
    """All valid operation sequences over ``gamma`` of length at most ``max_len``.

    Built by first-return decomposition (every nonempty valid string is
    uniquely push:X + inner + pop:X + rest), so no candidate filtering is
    involved; the checker-agreement is covered by tests.
    """
    if max_len > cap:
        raise CapExceededError(max_len, cap)
    gamma = sorted(set(gamma))
    by_len: dict[int, set[tuple[StackOp, ...]]] = {0: {()}}
    for n in range(1, max_len + 1):
        bucket: set[tuple[StackOp, ...]] = set()
        if n % 2 == 0:
            for inner_len in range(0, n - 1, 2):
                rest_len = n - 2 - inner_len
                for sym in gamma:
                    for inner in by_len[inner_len]:
                        head = (push(sym),) + inner + (pop(sym),)
                        for rest in by_len[rest_len]:
                            bucket.add(head + rest)
        by_len[n] = bucket
    out: set[tuple[StackOp, ...]] = set()
    for bucket in by_len.values():
        out.update(bucket)
    return frozenset(out)
