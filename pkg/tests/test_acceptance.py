"""Acceptance suite: one test per shipped guarantee, one PASS/FAIL line each.

Run with  pytest tests/test_acceptance.py -v -s  to see the report lines.
Each criterion also carries its runtime budget; a budget overrun fails the
criterion just like a wrong answer.
"""

import math
import random
import time

import numpy as np
import pytest

from stackmachines import (
    PairOp,
    accepts_dpda2,
    accepts_pda2,
    accepts_two_stack_bounded,
    accept_prob_bounded,
    brute_force_accepts,
    check_valid_single,
    check_valid_two,
    projection_language,
    enumerate_valid,
    evolve,
    machine_kind,
    parse_machine,
    pda1_to_pda2,
    pda2_to_pda1,
    pop,
    push,
    serialize_machine,
    subset_construct,
    valid_string_grammar,
)
from stackmachines.cli import main as cli_main
from stackmachines.fixtures import fixture_path, fixture_text

from generators import (
    rand_dpda2,
    rand_pda1,
    rand_pda2,
    rand_quantum,
    rand_twostack,
)
from oracles import (
    all_op_strings,
    catalan,
    ext_equiv_counterexample,
    grammar_language,
    is_0n1n2n,
    is_w_hash_w,
    is_wwr,
    pda1_accepts_bounded,
    qfa_prob,
    strings_over,
)


REPORT: list[str] = []


def _finish(name: str, started: float, limit: float, failures: list):
    elapsed = time.monotonic() - started
    ok = not failures and elapsed < limit
    line = f"[criterion {name}] {'PASS' if ok else 'FAIL'}  ({elapsed:.1f}s, limit {limit:.0f}s)"
    REPORT.append(line)
    print("\n" + line)
    for detail in failures[:10]:
        REPORT.append(f"  - {detail}")
        print(f"  - {detail}")
    if elapsed >= limit:
        failures.append(f"runtime {elapsed:.1f}s exceeded {limit:.0f}s")
    assert ok, f"criterion {name}: {len(failures)} failure(s); first: {failures[0] if failures else ''}"


def test_criterion_1_validity_conformance():
    started = time.monotonic()
    failures = []

    first = [push("X", 1), push("Y", 1), push("X", 1), pop("X", 1), pop("Y", 1), pop("X", 1)]
    if not check_valid_single(first).ok:
        failures.append("first worked single-stack sequence should be valid")

    second = [push("X", 1), push("Y", 1), push("X", 1), pop("Y", 1), pop("Y", 1), pop("X", 1)]
    t = check_valid_single(second)
    if t.ok or t.illegal_at != 4:
        failures.append(f"second worked sequence should fail at position 4, got {t.outcome}")

    pair_string = [
        PairOp(push("X", 1), push("Y", 2)),
        PairOp(push("Y", 1), push("X", 2)),
        PairOp(push("X", 1), pop("X", 2)),
        PairOp(pop("X", 1), push("Y", 2)),
        PairOp(pop("Y", 1), pop("Y", 2)),
        PairOp(pop("X", 1), pop("X", 2)),
    ]
    t1, t2 = check_valid_two(pair_string)
    if not (t1.ok and t2.ok):
        failures.append(
            "worked pair string should be valid on both stacks, got "
            f"({t1.outcome}, {t2.outcome})"
        )

    _finish("1 validity conformance", started, 1.0, failures)


def test_criterion_2_grammar_checker_agreement():
    started = time.monotonic()
    failures = []

    for gamma in (["X"], ["X", "Y"]):
        g = valid_string_grammar(gamma)
        generated = grammar_language(g, 8)
        by_checker = set()
        for n in range(9):
            for s in all_op_strings(gamma, n):
                if check_valid_single(s).ok:
                    by_checker.add(s)
        if generated != frozenset(by_checker):
            diff = generated.symmetric_difference(by_checker)
            failures.append(f"grammar/checker mismatch for {gamma}: {len(diff)} strings differ")

    # drive the CYK parser directly: exhaustively for one symbol, sampled for two
    g1 = valid_string_grammar(["X"])
    for n in range(9):
        for s in all_op_strings(["X"], n):
            if g1.generates(s) != check_valid_single(s).ok:
                failures.append(f"CYK disagrees with checker on {s}")
    g2 = valid_string_grammar(["X", "Y"])
    rng = random.Random(2)
    toks = [push("X"), pop("X"), push("Y"), pop("Y")]
    for _ in range(1500):
        s = tuple(rng.choice(toks) for _ in range(rng.randint(0, 8)))
        if g2.generates(s) != check_valid_single(s).ok:
            failures.append(f"CYK disagrees with checker on {s}")

    seqs = enumerate_valid(["X"], 12)
    for n in range(7):
        count = sum(1 for s in seqs if len(s) == 2 * n)
        if count != catalan(n):
            failures.append(f"count at length {2 * n} is {count}, want Catalan {catalan(n)}")

    _finish("2 grammar/checker agreement", started, 30.0, failures)


def test_criterion_3_fixture_languages():
    started = time.monotonic()
    failures = []
    max_steps, max_depth = 100000, 16

    leq = parse_machine(fixture_text("leq.sm"))
    for x in strings_over("012", 9):
        got = accepts_two_stack_bounded(leq, x, max_steps, max_depth)
        want = "accepted" if is_0n1n2n(x) else "rejected"
        if got.verdict != want:
            failures.append(f"0n1n2n fixture on {x!r}: {got.verdict} != {want}")

    lw = parse_machine(fixture_text("lw.sm"))
    for x in strings_over("01#", 9):
        got = accepts_two_stack_bounded(lw, x, max_steps, max_depth)
        want = "accepted" if is_w_hash_w(x) else "rejected"
        if got.verdict != want:
            failures.append(f"w#w fixture on {x!r}: {got.verdict} != {want}")

    lwwr = parse_machine(fixture_text("lwwr.sm"))
    for x in strings_over("01", 8):
        if accepts_pda2(lwwr, x)[0] != is_wwr(x):
            failures.append(f"wwr fixture wrong on {x!r}")

    _finish("3 fixture languages", started, 120.0, failures)


def _pda1_agrees(p1, expect: bool) -> bool:
    """Classical-search verdict against an expected one, bounds raised until stable."""

    def check(x):
        for steps, depth in ((20000, 10), (80000, 14), (300000, 18)):
            found, complete = pda1_accepts_bounded(p1, x, steps, depth)
            if found:
                return True
            if complete:
                return False
        return False

    return check


def test_criterion_4_conversion_equivalence():
    started = time.monotonic()
    failures = []
    inputs = list(strings_over("01", 5))

    rng = random.Random(1004)
    for k in range(200):
        m = rand_pda1(rng)
        image = pda1_to_pda2(m)
        oracle = _pda1_agrees(m, None)
        for x in inputs:
            want = accepts_pda2(image, x)[0]
            if oracle(x) != want:
                failures.append(f"pda1->pda2 #{k} disagrees on {x!r}")
                break

    for k in range(200):
        m = rand_pda2(rng)
        image = pda2_to_pda1(m)
        oracle = _pda1_agrees(image, None)
        for x in inputs:
            want = accepts_pda2(m, x)[0]
            if oracle(x) != want:
                failures.append(f"pda2->pda1 #{k} disagrees on {x!r}")
                break

    _finish("4 conversion equivalence", started, 300.0, failures)


def test_criterion_5_subset_construction():
    started = time.monotonic()
    failures = []

    machines = [parse_machine(fixture_text("lwwr.sm"))]
    rng = random.Random(1005)
    machines.extend(
        rand_pda2(rng, gamma=("A",) if k % 2 else ("A", "B")) for k in range(100)
    )

    for k, m in enumerate(machines):
        det = subset_construct(m)
        cex = ext_equiv_counterexample(m, det, 8)
        if cex is not None:
            failures.append(f"machine #{k}: extended-language counterexample {cex}")
            continue
        sigma = sorted(m.input_alphabet)
        for x in strings_over(sigma, 6):
            if accepts_pda2(m, x)[0] != accepts_dpda2(det, x):
                failures.append(f"machine #{k}: sigma-language differs on {x!r}")
                break

    _finish("5 determinization equivalence", started, 300.0, failures)


def test_criterion_6_projection_language():
    started = time.monotonic()
    failures = []

    lwwr = parse_machine(fixture_text("lwwr.sm"))
    fixtures = [("lwwr", lwwr), ("lwwr determinized", subset_construct(lwwr))]
    for name, m in fixtures:
        lang = projection_language(m, 10)
        checker = lwwr if name == "lwwr" else m
        for x in lang:
            ok = accepts_pda2(lwwr, x)[0]
            if not ok:
                failures.append(f"{name}: enumerated {x!r} is not accepted")
        for x in strings_over("01", 5):
            has_short_witness = brute_force_accepts(m, x, 10)
            if has_short_witness != (x in lang):
                failures.append(f"{name}: witness/enumeration mismatch on {x!r}")

    _finish("6 projection language", started, 120.0, failures)


def test_criterion_7_quantum():
    started = time.monotonic()
    failures = []

    rot = parse_machine(fixture_text("rot.sm"))
    for tok, U in rot.unitaries.matrices.items():
        resid = np.abs(np.conj(U.T) @ U - np.eye(U.shape[0])).max()
        if resid > 1e-9:
            failures.append(f"fixture matrix for {tok} has residual {resid}")

    nprng = np.random.default_rng(1007)
    rng = random.Random(1007)
    machines = [rand_quantum(nprng, n_states=rng.choice([2, 3, 4])) for _ in range(20)]
    checked = 0
    for m in machines:
        toks = sorted(m.unitaries.matrices, key=repr)
        for _ in range(500):
            s = [rng.choice(toks) for _ in range(rng.randint(0, 15))]
            if abs(np.linalg.norm(evolve(m, s)) - 1.0) > 1e-9:
                failures.append(f"norm drift on {s[:4]}...")
            checked += 1
    if checked < 10000:
        failures.append(f"only {checked} norm checks ran")

    eye = np.eye(2, dtype=complex)
    for theta in (math.pi / 6, math.pi / 4, math.pi / 3):
        c, s = math.cos(theta), math.sin(theta)
        from stackmachines import Alphabets, QuantumMachine, UnitaryFamily

        m = QuantumMachine(
            states=("q0", "q1"),
            alphabets=Alphabets({"0"}, {"X"}),
            unitaries=UnitaryFamily(
                2, {"0": np.array([[c, -s], [s, c]], dtype=complex), push("X"): eye, pop("X"): eye}
            ),
            initial=0,
            accepting=frozenset({"q1"}),
        )
        got = accept_prob_bounded(m, "0", 6)
        if abs(got - math.sin(theta) ** 2) > 1e-9:
            failures.append(f"rotation {theta:.3f}: {got} != sin^2")

    for k in range(100):
        m = rand_quantum(nprng, n_states=int(nprng.integers(2, 4)))
        prev = -1.0
        for bound in range(5):
            cur = accept_prob_bounded(m, "0", bound)
            if cur < prev - 1e-12:
                failures.append(f"monotonicity broken on machine #{k} at bound {bound}")
                break
            prev = cur

    for k in range(100):
        m = rand_quantum(nprng, n_states=int(nprng.integers(2, 5)), sigma=("0", "1"), gamma=())
        x = "".join(rng.choice("01") for _ in range(rng.randint(0, 4)))
        got = accept_prob_bounded(m, x, len(x))
        want = qfa_prob(m, x)
        if abs(got - want) > 1e-9:
            failures.append(f"stack-free machine #{k} on {x!r}: {got} != {want}")

    _finish("7 quantum evolution", started, 180.0, failures)


def test_criterion_8_cli_contract(tmp_path, capsys):
    started = time.monotonic()
    failures = []

    fixtures = [parse_machine(fixture_text(n)) for n in ("leq.sm", "lw.sm", "lwwr.sm", "rot.sm")]
    rng = random.Random(1008)
    nprng = np.random.default_rng(1008)
    machines = list(fixtures)
    from stackmachines.quantum import TWO

    for _ in range(250):
        machines.append(rand_pda1(rng))
        machines.append(rand_pda2(rng))
    for _ in range(200):
        machines.append(rand_dpda2(rng))
        machines.append(rand_twostack(rng, tape=("t",)))
    for _ in range(50):
        machines.append(rand_quantum(nprng, n_states=2))
        machines.append(rand_quantum(nprng, n_states=2, flavor=TWO))
    for k, m in enumerate(machines):
        text = serialize_machine(m)
        again = parse_machine(text)
        if again != m or serialize_machine(again) != text:
            failures.append(f"round-trip failure on machine #{k} ({machine_kind(m)})")

    leq = str(fixture_path("leq.sm"))
    lwwr = str(fixture_path("lwwr.sm"))
    bad = tmp_path / "bad.sm"
    bad.write_text("machine pda2\nstates q0\ninitial q0\naccept qxx\ninput 0\nstack Z\n")
    matrix = [
        (["accept", "-m", leq, "-x", "000111222"], 0),
        (["accept", "-m", lwwr, "-x", "0110"], 0),
        (["check-valid", "push1:X pop1:X"], 0),
        (["accept", "-m", leq, "-x", "0012"], 1),
        (["accept", "-m", lwwr, "-x", "010"], 1),
        (["check-valid", "pop1:X"], 1),
        (["accept", "-m", str(bad), "-x", "0"], 2),
        (["accept", "-m", leq, "-x", "9"], 2),
        (["check-valid", "gibberish"], 2),
        (["determinize", "-m", leq], 2),
        (["convert", "--to", "pda2", "-m", leq], 2),
        (["qprob", "-m", lwwr, "-x", "0"], 2),
        (["accept", "-m", leq, "-x", "000111222", "--max-steps", "5"], 3),
    ]
    for argv, want in matrix:
        got = cli_main(argv)
        if got != want:
            failures.append(f"exit code for {' '.join(argv)}: {got} != {want}")
    capsys.readouterr()

    _finish("8 file format and CLI contract", started, 60.0, failures)
