import pytest
from hypothesis import given
from hypothesis import strategies as st

from pdaconv import oracles
from pdaconv.actree import size
from pdaconv.core import EPS, Action, Cfg, Fsa, Pda, ParikhVector, Rule, Transition
from pdaconv.family import FamilyParams, build_family_pda

from conftest import fixture, pdas


def test_p11_language():
    res = oracles.enumerate_pda_language(build_family_pda(FamilyParams(1, 1)), 12)
    assert res.complete and res.words == {("b",) * 8}


def test_budget_marks_incomplete():
    p = Pda(["q"], ["b"], ["Z"], "q", "Z", [Action("q", "Z", EPS, "q", ("Z", "Z")), Action("q", "Z", "b", "q")])
    res = oracles.enumerate_pda_language(p, 30, max_steps=50)
    assert not res.complete
    with pytest.raises(oracles.IncompleteEnumeration):
        oracles.parikh_difference(res, res, 30)


def test_final_state_mode():
    res = oracles.enumerate_pda_language(fixture("final_even.pda"), 6)
    assert res.words == {(), ("b",) * 2, ("b",) * 4, ("b",) * 6}


def test_cfg_language_small():
    g = Cfg(["S"], ["a", "b"], "S", [Rule("S", ("a", "S", "b")), Rule("S", ())])
    assert oracles.enumerate_cfg_language(g, 4).sorted_words() == [(), ("a", "b"), ("a", "a", "b", "b")]


def test_cfg_unproductive_start():
    g = Cfg(["S"], ["b"], "S", [Rule("S", ("b", "S"))])
    assert oracles.enumerate_cfg_language(g, 6).words == frozenset()


def test_fsa_language_with_eps():
    a = Fsa(["s", "t"], ["b"], [Transition("s", EPS, "t"), Transition("t", "b", "s")], "s", ["t"])
    assert oracles.enumerate_fsa_language(a, 3).words == {(), ("b",), ("b", "b"), ("b",) * 3}


def test_parikh_difference_reports_first_vector():
    a = oracles.EnumerationResult(frozenset({("a", "b"), ("b",)}), True)
    b = oracles.EnumerationResult(frozenset({("b", "a")}), True)
    diff = oracles.parikh_difference(a, b, 5)
    assert diff == [ParikhVector.of("b")]
    assert oracles.language_difference(a, b, 5)[0] == ("b",)


def test_parikh_image_alphabet_check():
    with pytest.raises(ValueError):
        oracles.parikh_image([("c",)], alphabet=["b"])


@given(st.integers(0, 40))
def test_minimal_unary_fsa(N):
    a = oracles.minimal_unary_fsa(N)
    assert len(a.states) == N + 1
    assert oracles.enumerate_fsa_language(a, N + 3).words == {("b",) * N}


def _slow_pda_words(p, max_len, depth=14):
    # plain depth-bounded DFS with no pruning at all
    out = set()

    def go(state, stack, word, steps):
        if not stack:
            out.add(word)
            return
        if steps == depth:
            return
        for a in p.actions_from(state, stack[0]):
            w2 = word + (a.input,) if a.input else word
            if len(w2) <= max_len and len(stack) + len(a.push) - 1 <= depth - steps:
                go(a.target, a.push + stack[1:], w2, steps + 1)

    go(p.initial_state, (p.initial_stack_symbol,), (), 0)
    return out


@given(pdas(max_actions=5))
def test_pruned_bfs_agrees_with_plain_dfs(p):
    res = oracles.enumerate_pda_language(p, 4, max_steps=50_000, max_stack=30)
    slow = _slow_pda_words(p, 4)
    # the DFS is depth-bounded, so it can only miss words
    assert slow <= res.words or not res.complete


def test_actree_enumeration_example1(example1):
    trees = oracles.enumerate_actrees(example1, 11)
    assert len(trees) == 1 and size(trees[0]) == 11


def test_actree_enumeration_non_accepting():
    p = fixture("single.pda")
    assert len(oracles.enumerate_actrees(p, 3, accepting_only=False)) == 1
