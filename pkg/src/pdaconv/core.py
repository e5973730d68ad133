"""Pushdown automata, grammars, finite automata and their basic operations.

Stacks are tuples with the top at index 0.  The empty string ``EPS`` stands
for epsilon wherever an input label is expected; it can never collide with a
terminal because terminals are nonempty tokens.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Sequence

EPS = ""


class NotEnabled(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Action:
    source: str
    pop: str
    input: str
    target: str
    push: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "push", tuple(self.push))

    def __str__(self):
        b = self.input or "eps"
        rhs = " ".join((self.target,) + self.push)
        return f"({self.source},{self.pop})-{b}->({rhs})"


@dataclass(frozen=True, order=True)
class Id:
    state: str
    stack: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "stack", tuple(self.stack))

    def __str__(self):
        return f"({self.state},{' '.join(self.stack) or 'eps'})"


def _fset(xs) -> frozenset:
    return frozenset(xs)


@dataclass(frozen=True)
class Pda:
    """A PDA.  ``final_states`` is None for empty-stack acceptance."""

    states: frozenset[str]
    input_alphabet: frozenset[str]
    stack_alphabet: frozenset[str]
    initial_state: str
    initial_stack_symbol: str
    actions: frozenset[Action]
    final_states: frozenset[str] | None = None

    def __post_init__(self):
        for name in ("states", "input_alphabet", "stack_alphabet", "actions"):
            object.__setattr__(self, name, _fset(getattr(self, name)))
        if self.final_states is not None:
            object.__setattr__(self, "final_states", _fset(self.final_states))

    @property
    def empty_stack(self) -> bool:
        return self.final_states is None

    @property
    def initial_id(self) -> Id:
        return Id(self.initial_state, (self.initial_stack_symbol,))

    def sorted_actions(self) -> list[Action]:
        return sorted(self.actions)

    def actions_from(self, state: str, symbol: str) -> list[Action]:
        return [a for a in self.sorted_actions() if a.source == state and a.pop == symbol]


@dataclass(frozen=True, order=True)
class Rule:
    head: str
    body: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))

    def __str__(self):
        return f"{self.head} -> {' '.join(self.body) or 'eps'}"


@dataclass(frozen=True)
class Cfg:
    variables: frozenset[str]
    terminals: frozenset[str]
    start: str
    rules: frozenset[Rule]

    def __post_init__(self):
        for name in ("variables", "terminals", "rules"):
            object.__setattr__(self, name, _fset(getattr(self, name)))

    def sorted_rules(self) -> list[Rule]:
        return sorted(self.rules)


@dataclass(frozen=True, order=True)
class Transition:
    source: str
    label: str
    target: str


@dataclass(frozen=True)
class Fsa:
    states: frozenset[str]
    alphabet: frozenset[str]
    transitions: frozenset[Transition]
    initial: str
    finals: frozenset[str]

    def __post_init__(self):
        for name in ("states", "alphabet", "transitions", "finals"):
            object.__setattr__(self, name, _fset(getattr(self, name)))


@dataclass(frozen=True)
class ParikhVector:
    """Symbol counts of a word; symbols with count 0 are not stored."""

    counts: tuple[tuple[str, int], ...] = field(default=())

    @classmethod
    def of(cls, word: Iterable[str]) -> ParikhVector:
        c = Counter(s for s in word if s != EPS)
        return cls(tuple(sorted(c.items())))

    def __getitem__(self, symbol: str) -> int:
        return dict(self.counts).get(symbol, 0)

    def __str__(self):
        return "(" + ", ".join(f"{s}:{n}" for s, n in self.counts) + ")"


# --- validation -----------------------------------------------------------


def validate_pda(p: Pda) -> list[str]:
    """Return a list of invariant violations; empty when ``p`` is well formed."""
    report = []
    if not p.states:
        report.append("states: must be nonempty")
    if not p.stack_alphabet:
        report.append("stack_alphabet: must be nonempty")
    if p.initial_state not in p.states:
        report.append(f"initial_state: {p.initial_state!r} is not a declared state")
    if p.initial_stack_symbol not in p.stack_alphabet:
        report.append(
            f"initial_stack_symbol: {p.initial_stack_symbol!r} is not a declared stack symbol"
        )
    if EPS in p.input_alphabet:
        report.append("input_alphabet: epsilon cannot be a terminal")
    if p.final_states is not None and not p.final_states <= p.states:
        extra = sorted(p.final_states - p.states)
        report.append(f"final_states: undeclared states {extra}")
    for a in p.sorted_actions():
        bad = []
        for st in (a.source, a.target):
            if st not in p.states:
                bad.append(f"state {st!r}")
        for sym in (a.pop,) + a.push:
            if sym not in p.stack_alphabet:
                bad.append(f"stack symbol {sym!r}")
        if a.input != EPS and a.input not in p.input_alphabet:
            bad.append(f"input {a.input!r}")
        if bad:
            report.append(f"action {a}: undeclared " + ", ".join(bad))
    return report


def validate_cfg(g: Cfg) -> list[str]:
    report = []
    if g.start not in g.variables:
        report.append(f"start: {g.start!r} is not a variable")
    if g.variables & g.terminals:
        report.append(f"variables and terminals overlap: {sorted(g.variables & g.terminals)}")
    for r in g.sorted_rules():
        if r.head not in g.variables:
            report.append(f"rule {r}: head is not a variable")
        bad = [s for s in r.body if s not in g.variables and s not in g.terminals]
        if bad:
            report.append(f"rule {r}: undeclared symbols {bad}")
    return report


def validate_fsa(a: Fsa) -> list[str]:
    report = []
    if a.initial not in a.states:
        report.append(f"initial: {a.initial!r} is not a state")
    if not a.finals <= a.states:
        report.append(f"finals: undeclared states {sorted(a.finals - a.states)}")
    for t in sorted(a.transitions):
        if t.source not in a.states or t.target not in a.states:
            report.append(f"transition {t}: undeclared state")
        if t.label != EPS and t.label not in a.alphabet:
            report.append(f"transition {t}: undeclared symbol {t.label!r}")
    return report


# --- moves ----------------------------------------------------------------


def enabled(a: Action, i: Id) -> bool:
    return i.state == a.source and len(i.stack) > 0 and i.stack[0] == a.pop


def apply_move(a: Action, i: Id) -> Id:
    """Successor of ``i`` under ``a``.  The consumed label is ``a.input``."""
    if not enabled(a, i):
        raise NotEnabled(f"{a} is not enabled at {i}")
    return Id(a.target, a.push + i.stack[1:])


def is_quasi_run(ids: Sequence[Id], p: Pda) -> tuple[bool, list[Action] | None]:
    """Check whether ``ids`` is a quasi-run of ``p``.

    Returns ``(True, actions)`` with one witnessing action per move (the least
    one in sort order when several actions relate the same pair of IDs), or
    ``(False, None)``.
    """
    if not ids:
        return False, None
    if len(ids[0].stack) != 1 or len(ids[-1].stack) != 0:
        return False, None
    witness = []
    acts = p.sorted_actions()
    for before, after in zip(ids, ids[1:]):
        for a in acts:
            if enabled(a, before) and apply_move(a, before) == after:
                witness.append(a)
                break
        else:
            return False, None
    return True, witness


# --- structural checks ----------------------------------------------------


def check_deterministic(p: Pda) -> tuple[bool, tuple[Action, Action] | None]:
    """Return ``(True, None)`` or ``(False, (a, a'))`` with a conflicting pair."""
    by_key: dict[tuple[str, str], list[Action]] = {}
    for a in p.sorted_actions():
        by_key.setdefault((a.source, a.pop), []).append(a)
    for key in sorted(by_key):
        group = by_key[key]
        for a, b in combinations(group, 2):
            if a.input == b.input or EPS in (a.input, b.input):
                return False, (a, b)
    return True, None


def check_reduced_form(p: Pda) -> bool:
    return all(len(a.push) <= 2 for a in p.actions)


def fresh_name(base: str, taken) -> str:
    if base not in taken:
        return base
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def to_reduced_form(p: Pda) -> Pda:
    """Split every push longer than two into a chain of epsilon moves.

    An action ``(q,X) -b-> (q', Y1 ... Yd)`` with ``d > 2`` becomes

        (q,X)   -b->   (q', F1 Yd)
        (q',F1) -eps-> (q', F2 Y(d-1))
        ...
        (q',F(d-2)) -eps-> (q', Y1 Y2)

    so the bottom of the pushed word is laid down first and every fresh symbol
    is popped right after it is pushed.
    """
    if check_reduced_form(p):
        return p
    taken = set(p.stack_alphabet) | set(p.states) | set(p.input_alphabet)
    new_actions = []
    new_symbols = []
    for idx, a in enumerate(p.sorted_actions()):
        d = len(a.push)
        if d <= 2:
            new_actions.append(a)
            continue
        fresh = []
        for j in range(1, d - 1):
            name = fresh_name(f"{a.pop}.{idx}.{j}", taken)
            taken.add(name)
            fresh.append(name)
        new_symbols.extend(fresh)
        new_actions.append(replace(a, push=(fresh[0], a.push[-1])))
        for j in range(1, d - 2):
            new_actions.append(Action(a.target, fresh[j - 1], EPS, a.target, (fresh[j], a.push[d - 1 - j])))
        new_actions.append(Action(a.target, fresh[-1], EPS, a.target, a.push[:2]))
    return replace(p, stack_alphabet=p.stack_alphabet | frozenset(new_symbols), actions=frozenset(new_actions))


def word_str(word: Sequence[str]) -> str:
    """Render a word with runs compressed, e.g. ``b^8`` or ``a b^2``; ``eps`` if empty."""
    if not word:
        return "eps"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        parts.append(word[i] if j - i == 1 else f"{word[i]}^{j - i}")
        i = j
    return " ".join(parts)
