"""PDA -> CFG -> Parikh-equivalent FSA translations.

``pda_to_cfg_triples`` is the textbook triple construction.  The unary
deterministic variants keep only triples [q X q'] for which (q,[X]) can
actually be emptied into q' (the pop relation), which collapses the choice of
intermediate states and avoids the exponential rule blow-up.
``cfg_to_parikh_fsa`` tracks the multiset of pending variables of bounded
index derivations.
"""
from __future__ import annotations

from collections import Counter, deque
from itertools import product

from .core import (
    EPS,
    Action,
    Cfg,
    Fsa,
    Pda,
    Rule,
    Transition,
    check_deterministic,
    fresh_name,
    to_reduced_form,
)


class BudgetExceeded(RuntimeError):
    pass


class NotDeterministic(ValueError):
    pass


class NotUnary(ValueError):
    pass


class WrongAcceptance(ValueError):
    pass


class Not21NF(ValueError):
    pass


DEFAULT_BUDGET = 10**7

Triple = tuple[str, str, str]


def triple_name(q: str, X: str, q2: str) -> str:
    return f"[{q},{X},{q2}]"


# --- pop relation -------------------------------------------------------------


def pop_relation(p: Pda) -> frozenset[Triple]:
    """All (q, X, q') such that some quasi-run leads from (q, [X]) to (q', [])."""
    pops: dict[tuple[str, str], set[str]] = {}
    acts = p.sorted_actions()
    changed = True
    while changed:
        changed = False
        for a in acts:
            # states reachable after popping the pushed word left to right
            reach = {a.target}
            for Y in a.push:
                reach = {r2 for r in reach for r2 in pops.get((r, Y), ())}
                if not reach:
                    break
            slot = pops.setdefault((a.source, a.pop), set())
            if not reach <= slot:
                slot |= reach
                changed = True
    return frozenset((q, X, q2) for (q, X), targets in pops.items() for q2 in targets)


def pop_targets(rel) -> dict[tuple[str, str], set[str]]:
    out: dict[tuple[str, str], set[str]] = {}
    for q, X, q2 in rel:
        out.setdefault((q, X), set()).add(q2)
    return out


# --- classical triple construction ---------------------------------------------


def _start_name(p: Pda) -> str:
    return fresh_name("S", set(p.input_alphabet))


def pda_to_cfg_triples(p: Pda, trim: bool = False, budget: int = DEFAULT_BUDGET) -> Cfg:
    if not p.empty_stack:
        raise WrongAcceptance("triple construction needs empty-stack acceptance")
    states = sorted(p.states)
    n = len(states)
    total = 0
    for a in p.sorted_actions():
        total += n ** len(a.push)
        if total > budget:
            raise BudgetExceeded(
                f"action {a} pushes {len(a.push)} symbols: rule instantiations exceed {budget}"
            )
    variables = {triple_name(q, X, q2) for q in states for X in p.stack_alphabet for q2 in states}
    rules = []
    if n == 1:
        start = triple_name(p.initial_state, p.initial_stack_symbol, p.initial_state)
    else:
        start = _start_name(p)
        variables.add(start)
        rules += [Rule(start, (triple_name(p.initial_state, p.initial_stack_symbol, q),)) for q in states]
    for a in p.sorted_actions():
        lead = (a.input,) if a.input != EPS else ()
        d = len(a.push)
        for rs in product(states, repeat=d):
            prev, body = a.target, []
            for Y, r in zip(a.push, rs):
                body.append(triple_name(prev, Y, r))
                prev = r
            rules.append(Rule(triple_name(a.source, a.pop, prev), lead + tuple(body)))
    g = Cfg(variables, p.input_alphabet, start, rules)
    return trim_cfg(g) if trim else g


# --- grammar utilities ---------------------------------------------------------


def generating_variables(g: Cfg) -> set[str]:
    gen: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.head not in gen and all(s in gen or s not in g.variables for s in r.body):
                gen.add(r.head)
                changed = True
    return gen


def trim_cfg(g: Cfg) -> Cfg:
    """Drop non-generating, then unreachable variables (the start always stays)."""
    gen = generating_variables(g)
    rules = [r for r in g.rules if r.head in gen and all(s in gen or s in g.terminals for s in r.body)]
    by_head: dict[str, list[Rule]] = {}
    for r in rules:
        by_head.setdefault(r.head, []).append(r)
    reach = {g.start}
    todo = [g.start]
    while todo:
        v = todo.pop()
        for r in by_head.get(v, ()):
            for s in r.body:
                if s in g.variables and s not in reach:
                    reach.add(s)
                    todo.append(s)
    rules = [r for r in rules if r.head in reach]
    return Cfg(reach, g.terminals, g.start, rules)


def check_21nf(g: Cfg) -> bool:
    for r in g.rules:
        nvars = sum(1 for s in r.body if s in g.variables)
        if nvars > 2 or len(r.body) - nvars > 1:
            return False
    return True


# --- unary deterministic PDAs ----------------------------------------------------


def _check_udpda(p: Pda, want_empty_stack: bool) -> None:
    ok, witness = check_deterministic(p)
    if not ok:
        raise NotDeterministic(f"NotDeterministic: {witness[0]} conflicts with {witness[1]}")
    if len(p.input_alphabet) != 1:
        raise NotUnary(f"NotUnary: input alphabet {sorted(p.input_alphabet)} is not a singleton")
    if p.empty_stack != want_empty_stack:
        mode = "empty-stack" if want_empty_stack else "final-state"
        raise WrongAcceptance(f"WrongAcceptance: expected {mode} acceptance")


def udpda_to_cfg(p: Pda) -> Cfg:
    """CFG over the pop-relation triples only; at most one rule per action."""
    _check_udpda(p, want_empty_stack=True)
    rel = pop_relation(p)
    targets = pop_targets(rel)
    for key, ts in targets.items():
        assert len(ts) <= 1, f"pop targets of {key} not unique: {sorted(ts)}"
    nxt = {key: next(iter(ts)) for key, ts in targets.items() if ts}

    init = (p.initial_state, p.initial_stack_symbol)
    if init not in nxt:
        start = _start_name(p)
        return Cfg([start], p.input_alphabet, start, [])
    start = triple_name(*init, nxt[init])
    rules = []
    for a in p.sorted_actions():
        state, body = a.target, []
        for Y in a.push:
            if (state, Y) not in nxt:
                break
            r = nxt[(state, Y)]
            body.append(triple_name(state, Y, r))
            state = r
        else:
            lead = (a.input,) if a.input != EPS else ()
            rules.append(Rule(triple_name(a.source, a.pop, state), lead + tuple(body)))
    variables = {triple_name(q, X, q2) for q, X, q2 in rel}
    return Cfg(variables, p.input_alphabet, start, rules)


SINK = "sink"


def sink_names(p: Pda) -> tuple[str, str, str]:
    """Fresh (initial state, sink state, bottom symbol) used by the sink construction."""
    taken = set(p.states) | set(p.stack_alphabet) | set(p.input_alphabet)
    init = fresh_name("init", taken)
    taken.add(init)
    sink = fresh_name(SINK, taken)
    taken.add(sink)
    return init, sink, fresh_name("bottom", taken)


def udpda_final_to_empty(p: Pda) -> Pda:
    """Empty-stack PDA with the same language as a final-state UDPDA."""
    _check_udpda(p, want_empty_stack=False)
    init, sink, bottom = sink_names(p)
    stack = set(p.stack_alphabet) | {bottom}
    actions = set(p.actions)
    actions.add(Action(init, bottom, EPS, p.initial_state, (p.initial_stack_symbol, bottom)))
    for q in p.final_states:
        for X in stack:
            actions.add(Action(q, X, EPS, sink, (X,)))
    for X in stack:
        actions.add(Action(sink, X, EPS, sink, ()))
    return Pda(
        states=set(p.states) | {init, sink},
        input_alphabet=p.input_alphabet,
        stack_alphabet=stack,
        initial_state=init,
        initial_stack_symbol=bottom,
        actions=actions,
    )


def udpda_final_to_cfg(p: Pda, max_fanout: dict | None = None) -> Cfg:
    """CFG for a final-state UDPDA via the sink construction and the pop relation.

    For each action, the intermediate states r_1..r_d range over the (at most
    two) pop targets, and once some r_i is the sink all later ones are too.
    ``max_fanout``, when given, is filled with the rule count per action.
    """
    p2 = udpda_final_to_empty(p)
    sink = sink_names(p)[1]
    rel = pop_relation(p2)
    targets = pop_targets(rel)
    for key, ts in targets.items():
        assert len(ts) <= 2 and (len(ts) < 2 or sink in ts), f"pop targets of {key}: {sorted(ts)}"

    init = (p2.initial_state, p2.initial_stack_symbol)
    init_targets = sorted(targets.get(init, ()))
    if not init_targets:
        start = _start_name(p2)
        return Cfg([start], p.input_alphabet, start, [])
    variables = {triple_name(q, X, q2) for q, X, q2 in rel}
    rules = []
    if len(init_targets) == 1:
        start = triple_name(*init, init_targets[0])
    else:
        start = _start_name(p2)
        variables.add(start)
        rules += [Rule(start, (triple_name(*init, t),)) for t in init_targets]

    for a in p2.sorted_actions():
        lead = (a.input,) if a.input != EPS else ()
        emitted = 0
        # partial chains: (current state, body so far, entered sink?)
        chains = [(a.target, (), a.target == sink)]
        for Y in a.push:
            grown = []
            for state, body, in_sink in chains:
                for r in sorted(targets.get((state, Y), ())):
                    if in_sink and r != sink:
                        continue
                    grown.append((r, body + (triple_name(state, Y, r),), in_sink or r == sink))
            chains = grown
        for state, body, _ in chains:
            rules.append(Rule(triple_name(a.source, a.pop, state), lead + body))
            emitted += 1
        assert emitted <= len(a.push) + 1, f"{a} yields {emitted} rules"
        if max_fanout is not None:
            max_fanout[a] = emitted
    return Cfg(variables, p.input_alphabet, start, rules)


# --- Parikh-equivalent FSA --------------------------------------------------------


def _ms_key(m: Counter) -> tuple:
    return tuple(sorted((v, c) for v, c in m.items() if c))


def cfg_to_parikh_fsa(g: Cfg, cap: int | None = None) -> Fsa:
    """FSA over multisets of pending variables with at most ``cap`` elements.

    A transition expands one pending variable by one rule and reads the rule's
    terminal (or eps).  The default cap is |variables| + 1, the derivation
    index that suffices for Parikh equivalence; only states reachable from
    the start singleton are built, and they are named m0, m1, ... in
    breadth-first order.
    """
    if not check_21nf(g):
        raise Not21NF("grammar is not in 2-1 normal form")
    if cap is None:
        cap = len(g.variables) + 1
    by_head: dict[str, list[Rule]] = {}
    for r in g.sorted_rules():
        by_head.setdefault(r.head, []).append(r)

    init = _ms_key(Counter({g.start: 1}))
    final = ()
    names = {init: "m0"}
    order = deque([init])
    transitions = []
    while order:
        m = order.popleft()
        size = sum(c for _, c in m)
        for v, _ in m:
            for r in by_head.get(v, ()):
                new_vars = [s for s in r.body if s in g.variables]
                if size - 1 + len(new_vars) > cap:
                    continue
                nxt = Counter(dict(m))
                nxt[v] -= 1
                nxt.update(new_vars)
                key = _ms_key(nxt)
                if key not in names:
                    names[key] = f"m{len(names)}"
                    order.append(key)
                terms = [s for s in r.body if s not in g.variables]
                transitions.append(Transition(names[m], terms[0] if terms else EPS, names[key]))
    finals = [names[final]] if final in names else []
    return Fsa(names.values(), g.terminals, transitions, "m0", finals)


def pda_to_parikh_fsa(p: Pda, cap: int | None = None, budget: int = DEFAULT_BUDGET) -> Fsa:
    """Reduce pushes to length <= 2, build the trimmed triple grammar, then the multiset FSA."""
    g = pda_to_cfg_triples(to_reduced_form(p), trim=True, budget=budget)
    return cfg_to_parikh_fsa(g, cap)
