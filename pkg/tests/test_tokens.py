import pytest
from hypothesis import given
from hypothesis import strategies as st

from stackmachines import EPSILON, PairOp, StackOp, pair_tokens, pop, project, push, stack_tokens
from stackmachines.tokens import annotation_text, token_key, token_text


def test_project_keeps_target_subsequence():
    s = ("0", push("X"), "1", pop("X"))
    assert project(s, {"0", "1"}) == ("0", "1")


def test_project_of_plain_string():
    assert project("0a1b", {"0", "1"}) == ("0", "1")


def test_project_empty():
    assert project((), {"0"}) == ()


def test_project_full_alphabet_is_identity():
    s = ("0", push("X"), pop("X"))
    full = {"0", push("X"), pop("X")}
    assert project(s, full) == s


tokens_strategy = st.lists(
    st.one_of(
        st.sampled_from(["0", "1", "a"]),
        st.builds(push, st.sampled_from(["X", "Y"])),
        st.builds(pop, st.sampled_from(["X", "Y"])),
    ),
    max_size=12,
)
target_strategy = st.frozensets(
    st.one_of(
        st.sampled_from(["0", "1"]),
        st.builds(push, st.sampled_from(["X"])),
        st.builds(pop, st.sampled_from(["X", "Y"])),
    ),
    max_size=4,
)


@given(tokens_strategy, target_strategy)
def test_project_idempotent(s, target):
    once = project(s, target)
    assert project(once, target) == once


@given(tokens_strategy, tokens_strategy, target_strategy)
def test_project_distributes_over_concatenation(s, t, target):
    assert project(tuple(s) + tuple(t), target) == project(s, target) + project(t, target)


def test_stack_op_text_forms():
    assert push("X").text == "push:X"
    assert pop("Y", 2).text == "pop2:Y"
    assert PairOp(push("X", 1), None).text == "(push1:X,_)"
    assert PairOp(None, pop("Y", 2)).text == "(_,pop2:Y)"
    assert token_text(EPSILON) == "_"
    assert token_text("t0", tape=frozenset({"t0"})) == "tape:t0"
    assert token_text("0") == "0"


def test_stack_op_rejects_bad_fields():
    with pytest.raises(ValueError):
        StackOp("shove", "X")
    with pytest.raises(ValueError):
        StackOp("push", "X", 3)
    with pytest.raises(ValueError):
        PairOp(None, None)
    with pytest.raises(ValueError):
        PairOp(push("X", 2), None)


def test_pair_tokens_count():
    # both-sides pairs plus one-sided pairs: (2g)^2 + 2*(2g)
    for g in (1, 2):
        two_g = 2 * g
        assert len(pair_tokens([f"S{i}" for i in range(g)])) == two_g * two_g + 2 * two_g


def test_stack_tokens():
    assert stack_tokens(["X"]) == {push("X"), pop("X")}
    assert stack_tokens(["X"], 2) == {push("X", 2), pop("X", 2)}


def test_token_key_total_order():
    toks = ["0", EPSILON, push("X"), pop("X"), PairOp(push("X", 1), None)]
    assert sorted(toks, key=token_key)[0] is EPSILON


def test_annotation_text():
    s = ("0", push("X"), EPSILON)
    assert annotation_text(s) == "0 push:X _"
