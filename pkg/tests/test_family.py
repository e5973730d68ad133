import pytest

from pdaconv import actree as at
from pdaconv import oracles
from pdaconv.family import (
    FamilyParams,
    InvalidParams,
    NodeBudgetExceeded,
    bounds_report,
    build_family_pda,
    build_unique_actree,
    family_action_count,
    family_word_length,
)

from conftest import FIXTURES

GRID4 = [(n, k) for n in range(1, 5) for k in range(1, 5)]


@pytest.mark.parametrize("n,k", GRID4)
def test_family_shape(n, k):
    p = build_family_pda(FamilyParams(n, k))
    assert len(p.states) == n
    assert len(p.stack_alphabet) == k + 2 * n + 4
    assert len(p.actions) == family_action_count(FamilyParams(n, k)) == n * n * k + n * n + 4 * n + 1
    assert p.input_alphabet == {"b"}


def test_p11_has_seven_actions():
    # the schema counts 1, n^2 k, n^2, n, n, n-1, n-1, 1, 1 sum to 7 at n = k = 1
    assert len(build_family_pda(FamilyParams(1, 1)).actions) == 7


@pytest.mark.parametrize("bad", [(0, 1), (1, 0), (-1, 2), (1.5, 1)])
def test_invalid_params(bad):
    with pytest.raises(InvalidParams):
        FamilyParams(*bad)


def test_p21_memo_matches_golden_tree():
    golden = at.parse_actree((FIXTURES / "p21.actree").read_text())
    assert build_unique_actree(FamilyParams(2, 1)).expand() == golden
    assert at.size(golden) == 106


def test_p11_tree_shape():
    stats = build_unique_actree(FamilyParams(1, 1))
    assert stats.size == 8
    kids = stats.memo[stats.root].children
    assert [stats.memo[c].size for c in kids] == [6, 1]
    found = oracles.enumerate_actrees(build_family_pda(FamilyParams(1, 1)), 12)
    assert found == [stats.expand()]


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 4) for k in range(1, 4)])
def test_dimension_is_n2k(n, k):
    assert build_unique_actree(FamilyParams(n, k)).dimension == n * n * k


@pytest.mark.parametrize("n,k,N", [(1, 1, 8), (2, 1, 106), (1, 2, 18)])
def test_word_length_by_simulation(n, k, N):
    assert family_word_length(FamilyParams(n, k)) == N
    res = oracles.enumerate_pda_language(build_family_pda(FamilyParams(n, k)), N + 2)
    assert res.complete and res.words == {("b",) * N}


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 6) for k in range(1, 6)])
def test_word_length_lower_bound(n, k):
    assert family_word_length(FamilyParams(n, k)) >= 2 ** (n * n * k)


def test_expand_budget():
    with pytest.raises(NodeBudgetExceeded):
        build_unique_actree(FamilyParams(2, 2)).expand(node_budget=1000)


def test_expanded_tree_is_valid_actree():
    params = FamilyParams(2, 2)
    t = build_unique_actree(params).expand()
    assert at.is_accepting(t, build_family_pda(params))
    assert at.size(t) == 1446 and at.dimension(t) == 8


def test_bounds_p21():
    rep = bounds_report(FamilyParams(2, 1)).as_dict()
    assert rep["p"] == 9
    assert rep["cfg_textbook_vars"] == 37
    assert rep["N"] == 106
    assert rep["fsa_lower_states"] == 107
    assert rep["lower_2pow"] == 16


def test_bounds_p11():
    rep = bounds_report(FamilyParams(1, 1)).as_dict()
    assert rep["p"] == 7 and rep["cfg_textbook_vars"] == 7 and rep["fsa_lower_states"] == 9
