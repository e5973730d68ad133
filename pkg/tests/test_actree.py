import random

import pytest
from hypothesis import given

from pdaconv import actree as at
from pdaconv.core import EPS, Action, Id, NotEnabled, is_quasi_run
from pdaconv.family import FamilyParams, build_unique_actree

from conftest import FIXTURES, all_quasiruns, fixture, pdas, random_pda
from test_core import _example_run

A1 = Action("q0", "X1", EPS, "q0", ("X0", "X0"))
A2 = Action("q0", "X0", EPS, "q1", ("X1", "star"))
A3 = Action("q1", "X1", EPS, "q1", ("X0", "X0"))
A4 = Action("q1", "X0", "b", "q1")
A5 = Action("q1", "star", EPS, "q0")


def example_tree():
    half = at.ActTree(A2, (at.ActTree(A3, (at.ActTree(A4), at.ActTree(A4))), at.ActTree(A5)))
    return at.ActTree(A1, (half, half))


def example_run():
    ids = _example_run()
    return at.QuasiRun(ids, [A1, A2, A3, A4, A4, A5, A2, A3, A4, A4, A5])


def test_example_tree_valid(example1):
    t = example_tree()
    assert at.validate_actree(t, example1)
    assert at.seq(t) == [A1, A2, A3, A4, A4, A5, A2, A3, A4, A4, A5]
    assert at.is_accepting(t, example1)


def test_single_leaf_accepting():
    p = fixture("single.pda")
    leaf = at.ActTree(next(iter(p.actions)))
    assert at.is_accepting(leaf, p)


def test_swapping_children_breaks_tree():
    t = example_tree()
    half = t.children[0]
    swapped = at.ActTree(A2, (half.children[1], half.children[0]))
    assert at.actree_violation(at.ActTree(A1, (swapped, half))) is not None


def test_wrong_arity_detected():
    assert "children" in at.actree_violation(at.ActTree(A1, (at.ActTree(A4),)))


def test_size_and_consumed():
    t = example_tree()
    assert at.size(t) == 11
    assert at.consumed(t) == ("b",) * 4
    leaf = at.ActTree(A5)
    assert at.size(leaf) == 1 and at.consumed(leaf) == ()


def test_family_tree_consumes_one_b_per_node():
    t = build_unique_actree(FamilyParams(2, 1)).expand()
    assert at.consumed(t) == ("b",) * at.size(t)


def test_dimension_examples():
    assert at.dimension(example_tree()) == 2
    assert at.dimension(at.ActTree(A4)) == 0
    assert at.dimension_of([3, 0]) == 3
    assert at.dimension_of([3, 3]) == 4


def test_disassembly_of_example_run():
    assert at.tree_from_quasirun(example_run()) == example_tree()


def test_one_move_run_is_leaf():
    r = at.QuasiRun([Id("q1", ("star",)), Id("q0", ())], [A5])
    assert at.tree_from_quasirun(r) == at.ActTree(A5)


def test_assembly_of_example_tree():
    r = at.quasirun_from_tree(example_tree(), Id("q0", ("X1",)))
    assert r == example_run()


def test_assembly_of_leaf():
    r = at.quasirun_from_tree(at.ActTree(A4), Id("q1", ("X0",)))
    assert r.ids == (Id("q1", ("X0",)), Id("q1", ()))


def test_assembly_rejects_disabled_root():
    with pytest.raises(NotEnabled):
        at.quasirun_from_tree(example_tree(), Id("q1", ("X1",)))


def test_malformed_run_rejected():
    r = at.QuasiRun([Id("q1", ("X0", "X0")), Id("q1", ("X0",))], [A4])
    with pytest.raises(at.MalformedRun):
        at.tree_from_quasirun(r)


def test_random_pda_runs_disassemble_to_their_sequence():
    rng = random.Random(7)
    total = 0
    for _ in range(20):
        p = random_pda(rng, n_states=2, n_symbols=2, n_actions=6)
        for ids, acts in all_quasiruns(p, 8):
            t = at.tree_from_quasirun(at.QuasiRun(ids, acts))
            assert at.seq(t) == list(acts)
            assert at.validate_actree(t, p)
            total += 1
    assert total > 0


@given(pdas(max_actions=6))
def test_round_trip_all_short_runs(p):
    trees = set()
    runs = all_quasiruns(p, 7)
    for ids, acts in runs:
        r = at.QuasiRun(ids, acts)
        assert is_quasi_run(ids, p)[0]
        t = at.tree_from_quasirun(r)
        assert at.quasirun_from_tree(t, ids[0]) == r
        trees.add(t)
    assert len(trees) == len(runs)


def test_golden_p21_text_round_trip():
    text = (FIXTURES / "p21.actree").read_text()
    t = at.parse_actree(text)
    assert at.parse_actree(at.emit_actree(t)) == t
    assert at.emit_actree(t) == "".join(ln + "\n" for ln in text.splitlines() if not ln.startswith("#"))


def test_parse_actree_errors():
    with pytest.raises(ValueError):
        at.parse_actree("[actree]\ntree = a1\n")
    with pytest.raises(ValueError):
        at.parse_actree("[actree]\na1 = q X : b -> q\ntree = a1(a1\n")
