import pytest
from hypothesis import given

from pdaconv.core import Fsa, Transition
from pdaconv.textformat import FormatError, UndeclaredSymbol, emit_automaton, parse_automaton

from conftest import FIXTURES, grammars_21nf, pdas


def test_p21_fixture_round_trip():
    text = (FIXTURES / "p21.pda").read_text()
    once = emit_automaton(parse_automaton(text))
    assert once == text
    assert emit_automaton(parse_automaton(once)) == once


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.pda")))
def test_fixture_round_trip(name):
    obj = parse_automaton((FIXTURES / name).read_text())
    assert parse_automaton(emit_automaton(obj)) == obj


def test_undeclared_state_in_action():
    text = "[pda]\nstates = q0\ninput = b\nstack = Z\ninitial = q0 Z\nact q0 Z : b -> q9\n"
    with pytest.raises(UndeclaredSymbol) as e:
        parse_automaton(text)
    assert e.value.token == "q9" and e.value.lineno == 6


def test_empty_pda_body():
    with pytest.raises(FormatError):
        parse_automaton("[pda]\n")


def test_bad_header():
    with pytest.raises(FormatError):
        parse_automaton("[nfa]\nstates = a\n")


@given(pdas(max_push=3))
def test_pda_round_trip(p):
    assert parse_automaton(emit_automaton(p)) == p


@given(grammars_21nf())
def test_cfg_round_trip(g):
    assert parse_automaton(emit_automaton(g)) == g


def test_fsa_round_trip_with_eps():
    a = Fsa(["s", "t"], ["b"], [Transition("s", "", "t"), Transition("t", "b", "t")], "s", ["t"])
    text = emit_automaton(a)
    assert "trans s eps t" in text
    assert parse_automaton(text) == a
