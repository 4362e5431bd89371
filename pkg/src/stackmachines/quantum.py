"""Quantum stack machines: unitary evolution over the state space.

Each annotation token carries a unitary acting on the span of the machine's
states; a witness annotation evolves the initial basis state by applying its
tokens' unitaries in sequence.  The acceptance value of an input is the best
measurement probability of the accepting subspace over all witnesses whose
input projection matches and whose stack projection is valid, computed here
up to an explicit annotation-length bound (a lower bound for the unbounded
supremum, nondecreasing in the bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapExceededError, MalformedInputError
from .machines import Alphabets, _alphabet_problems, _name_problems
from .recognition import _apply_pair, input_symbols
from .tokens import Token, pair_tokens, pop, push, stack_tokens, token_key, token_text

SINGLE = "single"
TWO = "two"

UNITARY_TOL = 1e-9
QPROB_CAP = 12


@dataclass
class UnitaryFamily:
    """One unitary per annotation token, all of the same dimension."""

    dimension: int
    matrices: dict[Token, np.ndarray]

    def __eq__(self, other):
        if not isinstance(other, UnitaryFamily):
            return NotImplemented
        if self.dimension != other.dimension:
            return False
        if set(self.matrices) != set(other.matrices):
            return False
        return all(np.array_equal(self.matrices[t], other.matrices[t]) for t in self.matrices)


@dataclass
class QuantumMachine:
    """A quantum pushdown (single-stack) or two-stack machine.

    ``states`` is ordered: it fixes the basis the matrices are written in.
    ``initial`` is the index of the initial basis state.
    """

    states: tuple[str, ...]
    alphabets: Alphabets
    unitaries: UnitaryFamily
    initial: int
    accepting: frozenset[str]
    flavor: str = SINGLE

    @property
    def initial_state(self) -> str:
        return self.states[self.initial]

    def token_domain(self) -> frozenset[Token]:
        if self.flavor == SINGLE:
            return self.alphabets.input | stack_tokens(self.alphabets.stack)
        return self.alphabets.input | pair_tokens(self.alphabets.stack) | self.alphabets.tape


def check_unitary(U: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    """True iff U†U is the identity up to ``tol`` elementwise."""
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"matrix must be square, got shape {U.shape}")
    resid = U.conj().T @ U - np.eye(U.shape[0])
    return float(np.abs(resid).max()) <= tol


def validate_quantum(m: QuantumMachine) -> list[str]:
    out = []
    if m.flavor not in (SINGLE, TWO):
        out.append(f"unknown flavor {m.flavor!r}")
        return out
    if not m.states:
        out.append("state set is empty")
    if len(set(m.states)) != len(m.states):
        out.append("state names are not distinct")
    for q in m.states:
        out.extend(_name_problems("state", q))
        if isinstance(q, str) and q.startswith("#"):
            out.append(f"state name {q!r} may not start with '#'")
    if not 0 <= m.initial < len(m.states):
        out.append(f"initial index {m.initial} out of range")
    for q in sorted(m.accepting):
        if q not in m.states:
            out.append(f"accepting state {q!r} is not a declared state")
    out.extend(_alphabet_problems(m.alphabets))
    if m.flavor == SINGLE and m.alphabets.tape:
        out.append("single-stack quantum machines have no tape symbols")
    dim = len(m.states)
    if m.unitaries.dimension != dim:
        out.append(f"unitary dimension {m.unitaries.dimension} != |states| {dim}")
    want = m.token_domain()
    have = frozenset(m.unitaries.matrices)
    for tok in sorted(want - have, key=token_key):
        out.append(f"missing matrix for token {token_text(tok, m.alphabets.tape)}")
    for tok in sorted(have - want, key=token_key):
        out.append(f"matrix for undeclared token {token_text(tok, m.alphabets.tape)}")
    for tok in sorted(want & have, key=token_key):
        U = np.asarray(m.unitaries.matrices[tok])
        if U.shape != (dim, dim):
            out.append(f"matrix for {token_text(tok, m.alphabets.tape)} has shape {U.shape}, want {(dim, dim)}")
        elif not check_unitary(U):
            out.append(f"matrix for {token_text(tok, m.alphabets.tape)} is not unitary within {UNITARY_TOL}")
    return out


def evolve(m: QuantumMachine, s: Sequence[Token]) -> np.ndarray:
    """Apply the witness's unitaries to the initial basis state, first token first."""
    v = np.zeros(len(m.states), dtype=complex)
    v[m.initial] = 1.0
    for tok in s:
        U = m.unitaries.matrices.get(tok)
        if U is None:
            raise MalformedInputError(f"no unitary for token {token_text(tok, m.alphabets.tape)}")
        v = U @ v
    return v


def _accepting_indices(m: QuantumMachine) -> list[int]:
    return [i for i, q in enumerate(m.states) if q in m.accepting]


def measure_accepting(m: QuantumMachine, v: np.ndarray) -> float:
    idx = _accepting_indices(m)
    return float(sum(abs(v[i]) ** 2 for i in idx))


def accept_prob_bounded(m: QuantumMachine, x, max_annot_len: int, *, cap: int = QPROB_CAP) -> float:
    """Best accepting-measurement probability over witnesses up to the length bound.

    Enumerates every annotation whose input projection is x and whose stack
    projection is valid, sharing prefixes so each enumeration node costs one
    matrix-vector product.  Returns 0.0 when no witness fits the bound.
    """
    if max_annot_len > cap:
        raise CapExceededError(max_annot_len, cap)
    xs = input_symbols(x, m.alphabets.input)
    n = len(xs)
    mats = m.unitaries.matrices
    best = 0.0

    if m.flavor == SINGLE:
        gamma = sorted(m.alphabets.stack)

        def walk(v: np.ndarray, stack: tuple, pos: int, left: int) -> None:
            nonlocal best
            if pos == n and not stack:
                best = max(best, measure_accepting(m, v))
            if left == 0 or (n - pos) + len(stack) > left:
                return
            if pos < n:
                walk(mats[xs[pos]] @ v, stack, pos + 1, left - 1)
            for sym in gamma:
                walk(mats[push(sym)] @ v, stack + (sym,), pos, left - 1)
            if stack:
                walk(mats[pop(stack[-1])] @ v, stack[:-1], pos, left - 1)

        walk(evolve(m, ()), (), 0, max_annot_len)
        return best

    tapes = sorted(m.alphabets.tape)
    pairs = sorted(pair_tokens(m.alphabets.stack), key=token_key)

    def walk2(v: np.ndarray, s1: tuple, s2: tuple, pos: int, left: int) -> None:
        nonlocal best
        if pos == n and not s1 and not s2:
            best = max(best, measure_accepting(m, v))
        if left == 0 or (n - pos) + max(len(s1), len(s2)) > left:
            return
        if pos < n:
            walk2(mats[xs[pos]] @ v, s1, s2, pos + 1, left - 1)
        for d in tapes:
            walk2(mats[d] @ v, s1, s2, pos, left - 1)
        for tok in pairs:
            applied = _apply_pair(tok, s1, s2)
            if applied is not None:
                walk2(mats[tok] @ v, applied[0], applied[1], pos, left - 1)

    walk2(evolve(m, ()), (), (), 0, max_annot_len)
    return best
