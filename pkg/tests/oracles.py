"""Independent oracles used to cross-check library operations.

Everything here is deliberately written from first principles (direct
enumeration, configuration search, plain matrix products) so that it shares no
code path with the operations it checks.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np

from stackmachines import EPSILON, DpdaII, PdaI, PdaII, QuantumMachine
from stackmachines.tokens import pop, push, token_key


# ---------------------------------------------------------------- validity

def all_op_strings(gamma, length):
    """Every operation string of exactly ``length`` over the (untagged) alphabet."""
    toks = sorted([push(s) for s in gamma] + [pop(s) for s in gamma], key=token_key)
    return itertools.product(toks, repeat=length)


def valid_by_simulation(ops) -> bool:
    """Reference matched-pop simulation, independent of the library checker."""
    stack = []
    for t in ops:
        if t.op == "push":
            stack.append(t.symbol)
        else:
            if not stack or stack[-1] != t.symbol:
                return False
            stack.pop()
    return not stack


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def grammar_language(g, max_len: int) -> frozenset[tuple]:
    """All strings of length <= max_len derivable from the grammar's start symbol.

    Bottom-up fixpoint over the productions; knows nothing about stacks.
    """
    nts = set(g.productions)
    lang: dict[str, set[tuple]] = {nt: set() for nt in nts}
    changed = True
    while changed:
        changed = False
        for nt, rhss in g.productions.items():
            for rhs in rhss:
                candidates = {()}
                for sym in rhs:
                    grown = set()
                    if isinstance(sym, str) and sym in nts:
                        pool = lang[sym]
                    else:
                        pool = {(sym,)}
                    for prefix in candidates:
                        for piece in pool:
                            if len(prefix) + len(piece) <= max_len:
                                grown.add(prefix + piece)
                    candidates = grown
                    if not candidates:
                        break
                new = candidates - lang[nt]
                if new:
                    lang[nt].update(new)
                    changed = True
    return frozenset(lang[g.start])


# ---------------------------------------------------------------- PDA-I search

def pda1_accepts_bounded(m: PdaI, x, max_steps: int = 50000, max_depth: int = 12):
    """Configuration search for classical pushdown acceptance by final state.

    Returns (found, complete): ``found`` when an accepting configuration was
    reached; ``complete`` when the whole reachable space fit in the bounds (so
    a negative answer is exhaustive).
    """
    xs = tuple(x)
    n = len(xs)
    start = (m.initial, (m.initial_stack,), 0)
    seen = {start}
    queue = deque([start])
    pruned = False
    expanded = 0
    while queue:
        if expanded >= max_steps:
            pruned = True
            break
        state, stack, pos = queue.popleft()
        expanded += 1
        if pos == n and state in m.accepting:
            return True, True
        if not stack:
            continue
        top = stack[-1]
        moves = []
        if pos < n:
            moves.append((xs[pos], pos + 1))
        moves.append((EPSILON, pos))
        for a, npos in moves:
            for p, gamma in m.delta.get((state, a, top), ()):
                nstack = stack[:-1] + tuple(reversed(gamma))
                if len(nstack) > max_depth:
                    pruned = True
                    continue
                succ = (p, nstack, npos)
                if succ not in seen:
                    seen.add(succ)
                    queue.append(succ)
    return False, not pruned


# ------------------------------------------------- extended-alphabet runs

def extended_tokens(m) -> list:
    toks = sorted(m.input_alphabet)
    for sym in sorted(m.stack_alphabet):
        toks.append(push(sym))
        toks.append(pop(sym))
    return sorted(toks, key=token_key)


def _closure(m: PdaII, states) -> frozenset:
    out = set(states)
    work = list(states)
    while work:
        q = work.pop()
        for r in m.delta.get((q, EPSILON), ()):
            if r not in out:
                out.add(r)
                work.append(r)
    return frozenset(out)


def nfa_ext_run(m: PdaII, word) -> frozenset:
    states = _closure(m, {m.initial})
    for tok in word:
        nxt = set()
        for q in states:
            nxt.update(m.delta.get((q, tok), ()))
        states = _closure(m, nxt)
    return states


def nfa_ext_accepts(m: PdaII, word) -> bool:
    return bool(nfa_ext_run(m, word) & m.accepting)


def dfa_ext_accepts(m: DpdaII, word) -> bool:
    q = m.initial
    for tok in word:
        q = m.delta.get((q, tok))
        if q is None:
            return False
    return q in m.accepting


def ext_equiv_counterexample(nfa: PdaII, dfa: DpdaII, depth: int):
    """Shortest extended-alphabet word up to ``depth`` where the machines disagree.

    Product-space breadth-first search; visiting each (subset, dfa-state or
    dead) pair once is enough because future behavior depends only on the pair.
    """
    toks = extended_tokens(nfa)
    start = (_closure(nfa, {nfa.initial}), dfa.initial)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (states, dq), word = queue.popleft()
        n_acc = bool(states & nfa.accepting)
        d_acc = dq is not None and dq in dfa.accepting
        if n_acc != d_acc:
            return word
        if len(word) == depth:
            continue
        for tok in toks:
            nxt = set()
            for q in states:
                nxt.update(nfa.delta.get((q, tok), ()))
            nstates = _closure(nfa, nxt)
            ndq = dfa.delta.get((dq, tok)) if dq is not None else None
            pair = (nstates, ndq)
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, word + (tok,)))
    return None


# ---------------------------------------------------------------- quantum

def qfa_prob(m: QuantumMachine, x) -> float:
    """Measure-once acceptance probability by a straight matrix product."""
    U = np.eye(len(m.states), dtype=complex)
    for sym in x:
        U = m.unitaries.matrices[sym] @ U
    v = U[:, m.initial]
    return float(sum(abs(v[i]) ** 2 for i, q in enumerate(m.states) if q in m.accepting))


# ---------------------------------------------------------------- languages

def is_0n1n2n(x: str) -> bool:
    n = len(x) // 3
    return len(x) % 3 == 0 and x == "0" * n + "1" * n + "2" * n


def is_w_hash_w(x: str) -> bool:
    if x.count("#") != 1:
        return False
    a, b = x.split("#")
    return a == b


def is_wwr(x: str) -> bool:
    half = len(x) // 2
    return len(x) % 2 == 0 and x == x[:half] + x[:half][::-1]


def is_0n1n(x: str) -> bool:
    half = len(x) // 2
    return len(x) % 2 == 0 and x == "0" * half + "1" * half


def strings_over(sigma, max_len: int):
    for n in range(max_len + 1):
        for combo in itertools.product(sorted(sigma), repeat=n):
            yield "".join(combo)
