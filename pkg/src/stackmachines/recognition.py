"""Membership decisions for the machine models.

Two-stack membership is undecidable in general, so it is offered as a bounded
configuration search with an explicit inconclusive verdict.  PDA-II membership
is exact, via a balanced-reachability fixpoint: entry (p, i, q, j) means some
annotation segment leads from p to q consuming exactly the input slice
[i, j) while its stack projection never underflows and has empty net effect.
The fixpoint is closed under five rules: reflexive base entries, extension by
an input symbol, extension by an epsilon move, wrapping a balanced segment in
a matching push/pop, and concatenation of adjacent segments.

The fixpoint is implemented twice: a dense boolean-matrix form used for fast
decisions, and a sparse worklist form that records one derivation per entry
(first derivation wins) for witness reconstruction.  Tests hold the two forms
to identical answers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CapExceededError, MalformedInputError
from .machines import DpdaII, PdaII, TwoStackMachine
from .tokens import (
    EPSILON,
    PairOp,
    Token,
    pair_tokens,
    pop,
    project,
    push,
    token_key,
)
from .validity import check_valid_two

ACCEPTED = "accepted"
REJECTED = "rejected"
INCONCLUSIVE = "inconclusive"

BRUTE_FORCE_CAP = 14


@dataclass(frozen=True)
class RunOutcome:
    verdict: str
    witness: tuple[Token, ...] | None = None
    states_visited: int = 0

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPTED


@dataclass
class BalancedReachabilityTable:
    """The set of balanced-reachability entries for one machine/input pair."""

    length: int
    entries: frozenset[tuple[str, int, str, int]]
    derivations: dict = field(repr=False, compare=False, default_factory=dict)


def input_symbols(x, sigma: frozenset[str]) -> tuple[str, ...]:
    """Normalize an input string to a tuple of symbols, checking the alphabet."""
    xs = tuple(x)
    for sym in xs:
        if sym not in sigma:
            raise MalformedInputError(f"input symbol {sym!r} is not in the input alphabet")
    return xs


def run_annotation_two_stack(m: TwoStackMachine, s: Sequence[Token]) -> RunOutcome:
    """Run one annotation string through a two-stack machine and judge it.

    The run itself is a plain deterministic walk over the extended alphabet;
    stack validity is judged afterwards on the stack-token projection.  The
    input the witness recognizes is its projection onto the input alphabet.
    """
    s = tuple(s)
    alphabet = m.annotation_alphabet()
    for tok in s:
        if tok not in alphabet:
            raise MalformedInputError(f"token {tok!r} is not in the machine's annotation alphabet")
    state = m.initial
    visited = 1
    for tok in s:
        nxt = m.delta.get((state, tok))
        if nxt is None:
            return RunOutcome(REJECTED, states_visited=visited)
        state = nxt
        visited += 1
    if state not in m.accepting:
        return RunOutcome(REJECTED, states_visited=visited)
    t1, t2 = check_valid_two(project(s, pair_tokens(m.alphabets.stack)))
    if not (t1.ok and t2.ok):
        return RunOutcome(REJECTED, states_visited=visited)
    return RunOutcome(ACCEPTED, witness=s, states_visited=visited)


def _apply_pair(tok: PairOp, s1: tuple, s2: tuple):
    """Apply a pair token to two stacks; None means the move is illegal here."""
    for op, stack in ((tok.first, s1), (tok.second, s2)):
        if op is None:
            continue
        if op.op == "pop" and (not stack or stack[-1] != op.symbol):
            return None
    ns1, ns2 = s1, s2
    if tok.first is not None:
        ns1 = s1 + (tok.first.symbol,) if tok.first.op == "push" else s1[:-1]
    if tok.second is not None:
        ns2 = s2 + (tok.second.symbol,) if tok.second.op == "push" else s2[:-1]
    return ns1, ns2


def accepts_two_stack_bounded(
    m: TwoStackMachine, x, max_steps: int, max_depth: int
) -> RunOutcome:
    """Breadth-first configuration search for a two-stack acceptance witness.

    Verdicts: accepted (with a witness that re-verifies), rejected (the whole
    reachable configuration space fit inside the bounds and held no accepting
    configuration), or inconclusive (a bound cut the search short).
    """
    xs = input_symbols(x, m.alphabets.input)
    n = len(xs)
    tape = m.alphabets.tape
    by_state: dict[str, list] = {}
    for (q, tok), r in m.delta.items():
        by_state.setdefault(q, []).append((tok, r))
    for moves in by_state.values():
        moves.sort(key=lambda tr: token_key(tr[0]))

    def is_goal(cfg) -> bool:
        q, s1, s2, pos = cfg
        return pos == n and not s1 and not s2 and q in m.accepting

    def witness_of(cfg, parents) -> tuple[Token, ...]:
        out = []
        while cfg is not None:
            prev = parents[cfg]
            if prev is None:
                break
            cfg, tok = prev
            out.append(tok)
        return tuple(reversed(out))

    start = (m.initial, (), (), 0)
    parents: dict = {start: None}
    if is_goal(start):
        return RunOutcome(ACCEPTED, witness=(), states_visited=1)
    queue = deque([start])
    pruned = False
    expanded = 0
    while queue:
        if expanded >= max_steps:
            pruned = True
            break
        cfg = queue.popleft()
        expanded += 1
        q, s1, s2, pos = cfg
        for tok, r in by_state.get(q, ()):
            if isinstance(tok, str):
                if tok in tape:
                    succ = (r, s1, s2, pos)
                elif pos < n and xs[pos] == tok:
                    succ = (r, s1, s2, pos + 1)
                else:
                    continue
            else:
                applied = _apply_pair(tok, s1, s2)
                if applied is None:
                    continue
                ns1, ns2 = applied
                if len(ns1) > max_depth or len(ns2) > max_depth:
                    pruned = True
                    continue
                succ = (r, ns1, ns2, pos)
            if succ in parents:
                continue
            parents[succ] = (cfg, tok)
            if is_goal(succ):
                return RunOutcome(ACCEPTED, witness=witness_of(succ, parents), states_visited=len(parents))
            queue.append(succ)
    if pruned or queue:
        return RunOutcome(INCONCLUSIVE, states_visited=len(parents))
    return RunOutcome(REJECTED, states_visited=len(parents))


def balanced_reachability(m: PdaII, x) -> BalancedReachabilityTable:
    """Sparse balanced-reachability fixpoint with one recorded derivation per entry."""
    xs = input_symbols(x, m.input_alphabet)
    n = len(xs)
    states = sorted(m.states)

    push_into: dict[str, list[tuple[str, str]]] = {}
    for sym in sorted(m.stack_alphabet):
        for p in states:
            for q in sorted(m.delta.get((p, push(sym)), ())):
                push_into.setdefault(q, []).append((p, sym))

    derivs: dict = {}
    queue: deque = deque()
    by_left: dict[tuple[str, int], list] = {}
    by_right: dict[tuple[str, int], list] = {}

    def add(entry, deriv):
        if entry not in derivs:
            derivs[entry] = deriv
            queue.append(entry)

    for p in states:
        for i in range(n + 1):
            add((p, i, p, i), ("base",))

    while queue:
        e = queue.popleft()
        p, i, q, j = e
        by_left.setdefault((p, i), []).append(e)
        by_right.setdefault((q, j), []).append(e)
        if j < n:
            for r in sorted(m.delta.get((q, xs[j]), ())):
                add((p, i, r, j + 1), ("input", e, xs[j]))
        for r in sorted(m.delta.get((q, EPSILON), ())):
            add((p, i, r, j), ("eps", e))
        for outer, sym in push_into.get(p, ()):
            for r in sorted(m.delta.get((q, pop(sym)), ())):
                add((outer, i, r, j), ("wrap", sym, e))
        for e2 in list(by_left.get((q, j), ())):
            add((p, i, e2[2], e2[3]), ("concat", e, e2))
        for e1 in list(by_right.get((p, i), ())):
            add((e1[0], e1[1], q, j), ("concat", e1, e))

    return BalancedReachabilityTable(n, frozenset(derivs), derivs)


def _expand_witness(entry, derivs) -> tuple[Token, ...]:
    out: list[Token] = []
    stack: list[tuple[str, object]] = [("e", entry)]
    while stack:
        kind, item = stack.pop()
        if kind == "t":
            out.append(item)
            continue
        d = derivs[item]
        tag = d[0]
        if tag == "base":
            continue
        if tag == "input":
            stack.append(("t", d[2]))
            stack.append(("e", d[1]))
        elif tag == "eps":
            stack.append(("e", d[1]))
        elif tag == "wrap":
            stack.append(("t", pop(d[1])))
            stack.append(("e", d[2]))
            stack.append(("t", push(d[1])))
        elif tag == "concat":
            stack.append(("e", d[2]))
            stack.append(("e", d[1]))
    return tuple(out)


def _bool(mat: np.ndarray) -> np.ndarray:
    return (mat > 0).astype(np.float64)


def _dense_reachability(m: PdaII, xs: tuple[str, ...]):
    """Dense balanced-reachability: R[i][j] is a reachability matrix over states."""
    states = sorted(m.states)
    idx = {q: a for a, q in enumerate(states)}
    k = len(states)
    n = len(xs)

    mats: dict[Token, np.ndarray] = {}
    for (q, tok), image in m.delta.items():
        mat = mats.get(tok)
        if mat is None:
            mat = mats[tok] = np.zeros((k, k))
        for r in image:
            mat[idx[q], idx[r]] = 1.0
    eps = mats.get(EPSILON)
    wraps = []
    for sym in sorted(m.stack_alphabet):
        pu, po = mats.get(push(sym)), mats.get(pop(sym))
        if pu is not None and po is not None:
            wraps.append((pu, po))

    R = [[None] * (n + 1) for _ in range(n + 1)]
    for span in range(n + 1):
        for i in range(n + 1 - span):
            j = i + span
            if span == 0:
                m0 = np.eye(k)
            else:
                m0 = np.zeros((k, k))
                a = mats.get(xs[j - 1])
                if a is not None:
                    m0 = m0 + R[i][j - 1] @ a
                for mid in range(i + 1, j):
                    m0 = m0 + R[i][mid] @ R[mid][j]
            cur = _bool(m0)
            while True:
                acc = cur.copy()
                if eps is not None:
                    acc = acc + cur @ eps
                for pu, po in wraps:
                    acc = acc + pu @ cur @ po
                if span == 0:
                    acc = acc + cur @ cur
                else:
                    acc = acc + R[i][i] @ cur + cur @ R[j][j]
                nxt = _bool(acc)
                if np.array_equal(nxt, cur):
                    break
                cur = nxt
            R[i][j] = cur
    return R, idx


def accepts_pda2(m: PdaII, x, *, witness: bool = False):
    """Exact PDA-II membership; optionally reconstruct an accepting annotation.

    Returns (accepted, witness_or_None).  The witness is a string over the
    input symbols and untagged stack operations whose input projection is x,
    whose stack projection is valid, and which drives the initial state into
    an accepting state (epsilon moves are folded into the run).
    """
    xs = input_symbols(x, m.input_alphabet)
    n = len(xs)
    R, idx = _dense_reachability(m, xs)
    row = R[0][n][idx[m.initial]]
    accepted = any(row[idx[f]] > 0 for f in m.accepting if f in idx)
    if not accepted:
        return False, None
    if not witness:
        return True, None
    table = balanced_reachability(m, xs)
    for f in sorted(m.accepting):
        entry = (m.initial, 0, f, n)
        if entry in table.entries:
            return True, _expand_witness(entry, table.derivations)
    raise RuntimeError("dense and sparse reachability disagree; this is a bug")


def accepts_dpda2(m: DpdaII, x) -> bool:
    """DPDA-II membership, inherited from the PDA-II decision procedure."""
    return accepts_pda2(m.as_pda2(), x)[0]


def step_pda2(m: PdaII, states: frozenset[str], tok: Token) -> frozenset[str]:
    """One NFA step on ``tok`` followed by the epsilon closure."""
    out = set()
    for q in states:
        out.update(m.delta.get((q, tok), ()))
    return eps_closure_pda2(m, out)


def eps_closure_pda2(m: PdaII, states) -> frozenset[str]:
    closure = set(states)
    work = list(states)
    while work:
        q = work.pop()
        for r in m.delta.get((q, EPSILON), ()):
            if r not in closure:
                closure.add(r)
                work.append(r)
    return frozenset(closure)


def brute_force_accepts(m, x, max_annot_len: int, *, cap: int = BRUTE_FORCE_CAP) -> bool:
    """Search for an accepting annotation of bounded length by direct enumeration.

    Walks every annotation string whose input projection could still become x
    and whose stack projection is still a valid prefix; sound but incomplete
    (False only means there is no witness within the length bound).
    """
    if max_annot_len > cap:
        raise CapExceededError(max_annot_len, cap)
    if isinstance(m, DpdaII):
        m = m.as_pda2()
    if isinstance(m, PdaII):
        return _brute_force_pda2(m, x, max_annot_len)
    if isinstance(m, TwoStackMachine):
        return _brute_force_two_stack(m, x, max_annot_len)
    raise TypeError(f"unsupported machine type {type(m).__name__}")


def _brute_force_pda2(m: PdaII, x, budget: int) -> bool:
    xs = input_symbols(x, m.input_alphabet)
    n = len(xs)
    gamma = sorted(m.stack_alphabet)
    accepting = m.accepting

    def search(states: frozenset[str], stack: tuple, pos: int, left: int) -> bool:
        if pos == n and not stack and states & accepting:
            return True
        if not states:
            return False
        if (n - pos) + len(stack) > left:
            return False
        if pos < n:
            nxt = step_pda2(m, states, xs[pos])
            if nxt and search(nxt, stack, pos + 1, left - 1):
                return True
        for sym in gamma:
            nxt = step_pda2(m, states, push(sym))
            if nxt and search(nxt, stack + (sym,), pos, left - 1):
                return True
        if stack:
            nxt = step_pda2(m, states, pop(stack[-1]))
            if nxt and search(nxt, stack[:-1], pos, left - 1):
                return True
        return False

    return search(eps_closure_pda2(m, {m.initial}), (), 0, budget)


def _brute_force_two_stack(m: TwoStackMachine, x, budget: int) -> bool:
    xs = input_symbols(x, m.alphabets.input)
    n = len(xs)
    tape = m.alphabets.tape
    by_state: dict[str, list] = {}
    for (q, tok), r in m.delta.items():
        by_state.setdefault(q, []).append((tok, r))
    for moves in by_state.values():
        moves.sort(key=lambda tr: token_key(tr[0]))

    def search(q: str, s1: tuple, s2: tuple, pos: int, left: int) -> bool:
        if pos == n and not s1 and not s2 and q in m.accepting:
            return True
        if (n - pos) + max(len(s1), len(s2)) > left:
            return False
        for tok, r in by_state.get(q, ()):
            if isinstance(tok, str):
                if tok in tape:
                    if search(r, s1, s2, pos, left - 1):
                        return True
                elif pos < n and xs[pos] == tok:
                    if search(r, s1, s2, pos + 1, left - 1):
                        return True
            else:
                applied = _apply_pair(tok, s1, s2)
                if applied is not None and search(r, applied[0], applied[1], pos, left - 1):
                    return True
        return False

    return search(m.initial, (), (), 0, budget)
