from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from pdaconv.core import EPS, Action, Cfg, Id, Pda, Rule
from pdaconv.textformat import load

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("repo")

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name):
    return load(FIXTURES / name)


UDPDA_EMPTY = ["single.pda", "udpda_b3.pda", "udpda_unreachable.pda", "udpda_eps.pda", "udpda_chain.pda", "example1.pda"]
UDPDA_FINAL = ["final_b2.pda", "final_even.pda", "final_b3_eps.pda", "final_none.pda"]


@pytest.fixture
def example1():
    return fixture("example1.pda")


@pytest.fixture
def p21():
    return fixture("p21.pda")


# --- random PDAs --------------------------------------------------------------


def random_pda(rng: random.Random, n_states=2, n_symbols=3, n_actions=6, max_push=2, eps_rate=0.3) -> Pda:
    states = [f"q{i}" for i in range(n_states)]
    symbols = [f"Z{i}" for i in range(n_symbols)]
    acts = set()
    for _ in range(n_actions):
        push = tuple(rng.choice(symbols) for _ in range(rng.randint(0, max_push)))
        b = EPS if rng.random() < eps_rate else rng.choice("ab")
        acts.add(Action(rng.choice(states), rng.choice(symbols), b, rng.choice(states), push))
    return Pda(states, ["a", "b"], symbols, states[0], symbols[0], acts)


@st.composite
def pdas(draw, n_states=2, n_symbols=3, max_actions=7, max_push=2, alphabet=("a", "b")):
    states = [f"q{i}" for i in range(draw(st.integers(1, n_states)))]
    symbols = [f"Z{i}" for i in range(draw(st.integers(1, n_symbols)))]
    action = st.builds(
        Action,
        st.sampled_from(states),
        st.sampled_from(symbols),
        st.sampled_from((EPS,) + tuple(alphabet)),
        st.sampled_from(states),
        st.lists(st.sampled_from(symbols), max_size=max_push).map(tuple),
    )
    acts = draw(st.sets(action, max_size=max_actions))
    return Pda(states, alphabet, symbols, states[0], symbols[0], acts)


@st.composite
def grammars_21nf(draw, max_vars=4, max_rules=8):
    vs = [f"V{i}" for i in range(draw(st.integers(1, max_vars)))]
    term = st.sampled_from(["eps", "a", "b"])
    rule = st.builds(
        lambda h, t, body: Rule(h, ((t,) if t != "eps" else ()) + tuple(body)),
        st.sampled_from(vs),
        term,
        st.lists(st.sampled_from(vs), max_size=2),
    )
    rules = draw(st.sets(rule, min_size=1, max_size=max_rules))
    return Cfg(vs, ["a", "b"], vs[0], rules)


# --- brute-force quasi-run enumeration (independent of the actree module) --------


class TooManyPaths(RuntimeError):
    pass


def all_quasiruns(p: Pda, max_moves: int, limit: int | None = None):
    """Every quasi-run of ``p`` with at most ``max_moves`` moves, from every one-symbol ID.

    Raises TooManyPaths once more than ``limit`` partial runs have been explored.
    """
    out = []
    visited = 0
    by_key = {}
    for a in p.sorted_actions():
        by_key.setdefault((a.source, a.pop), []).append(a)

    def go(ids, acts):
        nonlocal visited
        visited += 1
        if limit is not None and visited > limit:
            raise TooManyPaths(visited)
        cur = ids[-1]
        if not cur.stack:
            out.append((tuple(ids), tuple(acts)))
            return
        if len(acts) == max_moves or len(cur.stack) > max_moves - len(acts):
            return
        for a in by_key.get((cur.state, cur.stack[0]), ()):
            nxt = Id(a.target, a.push + cur.stack[1:])
            go(ids + [nxt], acts + [a])

    for q in sorted(p.states):
        for X in sorted(p.stack_alphabet):
            go([Id(q, (X,))], [])
    return out


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
