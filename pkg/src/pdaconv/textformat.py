"""Line-based text format for PDAs, CFGs and FSAs.

    [pda]
    states = q0 q1
    input = b
    stack = S X0
    initial = q0 S
    accept = empty-stack            # or: final-states q1
    act q0 S : b -> q0 X0 X0        # input may be eps, empty push = nothing after target

    [cfg]
    variables = S A
    terminals = b
    start = S
    rule S -> b A A
    rule A -> eps

    [fsa]
    states = s0 s1
    alphabet = b
    initial = s0
    final = s1
    trans s0 b s1

``emit_automaton`` writes sections in a fixed order with sorted tokens, so
``emit(parse(emit(x))) == emit(x)`` byte for byte.
"""
from __future__ import annotations

import re
from pathlib import Path

from .core import EPS, Action, Cfg, Fsa, Pda, Rule, Transition

TOKEN = re.compile(r"[A-Za-z0-9_.$*\[\],|-]+\Z")
EPS_TOKEN = "eps"


class FormatError(ValueError):
    """Malformed input; ``lineno`` is 1-based (0 when not tied to a line)."""

    def __init__(self, msg, lineno=0):
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)
        self.lineno = lineno


class UndeclaredSymbol(FormatError):
    def __init__(self, token, lineno=0):
        super().__init__(f"undeclared symbol {token!r}", lineno)
        self.token = token


def _lines(text):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _tokens(s, lineno, punct=()):
    toks = s.split()
    for t in toks:
        if t not in punct and not TOKEN.match(t):
            raise FormatError(f"bad token {t!r}", lineno)
    return toks


def _label(tok):
    return EPS if tok == EPS_TOKEN else tok


def parse_automaton(text: str) -> Pda | Cfg | Fsa:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty input")
    lineno, header = lines[0]
    body = lines[1:]
    if header == "[pda]":
        return _parse_pda(body, lineno)
    if header == "[cfg]":
        return _parse_cfg(body, lineno)
    if header == "[fsa]":
        return _parse_fsa(body, lineno)
    raise FormatError(f"expected [pda], [cfg] or [fsa], got {header!r}", lineno)


def _split_fields(body, keyed, lined):
    """Split section lines into ``key = tokens`` fields and keyword-led lines."""
    fields, entries = {}, []
    for lineno, line in body:
        first = line.split(None, 1)[0]
        if first in lined:
            entries.append((lineno, first, line[len(first):]))
            continue
        if "=" not in line:
            raise FormatError(f"cannot parse {line!r}", lineno)
        key, _, rest = line.partition("=")
        key = key.strip()
        if key not in keyed:
            raise FormatError(f"unknown field {key!r}", lineno)
        if key in fields:
            raise FormatError(f"duplicate field {key!r}", lineno)
        fields[key] = (lineno, _tokens(rest, lineno))
    return fields, entries


def _require(fields, key, header_line, nonempty=True):
    if key not in fields:
        raise FormatError(f"missing field {key!r}", header_line)
    lineno, toks = fields[key]
    if nonempty and not toks:
        raise FormatError(f"field {key!r} must be nonempty", lineno)
    return lineno, toks


def _parse_pda(body, header_line):
    fields, entries = _split_fields(
        body, {"states", "input", "stack", "initial", "accept"}, {"act"}
    )
    _, states = _require(fields, "states", header_line)
    _, stack = _require(fields, "stack", header_line)
    _, inputs = fields.get("input", (0, []))
    init_line, init = _require(fields, "initial", header_line)
    if len(init) != 2:
        raise FormatError("initial needs a state and a stack symbol", init_line)
    if EPS_TOKEN in inputs:
        raise FormatError("'eps' cannot be an input symbol", fields["input"][0])
    states_s, stack_s, input_s = set(states), set(stack), set(inputs)
    if init[0] not in states_s:
        raise UndeclaredSymbol(init[0], init_line)
    if init[1] not in stack_s:
        raise UndeclaredSymbol(init[1], init_line)
    finals = None
    if "accept" in fields:
        acc_line, acc = fields["accept"]
        if acc == ["empty-stack"]:
            finals = None
        elif acc and acc[0] == "final-states":
            finals = frozenset(acc[1:])
            for q in finals:
                if q not in states_s:
                    raise UndeclaredSymbol(q, acc_line)
        else:
            raise FormatError("accept must be 'empty-stack' or 'final-states ...'", acc_line)
    actions = []
    for lineno, _, rest in entries:
        toks = _tokens(rest, lineno, (":", "->"))
        if len(toks) < 6 or toks[2] != ":" or toks[4] != "->":
            raise FormatError("expected 'act q X : b -> q' ...'", lineno)
        src, pop, b, tgt, push = toks[0], toks[1], _label(toks[3]), toks[5], toks[6:]
        for st in (src, tgt):
            if st not in states_s:
                raise UndeclaredSymbol(st, lineno)
        for sym in [pop] + push:
            if sym not in stack_s:
                raise UndeclaredSymbol(sym, lineno)
        if b != EPS and b not in input_s:
            raise UndeclaredSymbol(b, lineno)
        actions.append(Action(src, pop, b, tgt, tuple(push)))
    return Pda(states, inputs, stack, init[0], init[1], actions, finals)


def _parse_cfg(body, header_line):
    fields, entries = _split_fields(body, {"variables", "terminals", "start"}, {"rule"})
    _, variables = _require(fields, "variables", header_line)
    _, terminals = fields.get("terminals", (0, []))
    start_line, start = _require(fields, "start", header_line)
    if len(start) != 1:
        raise FormatError("start takes exactly one variable", start_line)
    vs, ts = set(variables), set(terminals)
    if EPS_TOKEN in vs | ts:
        raise FormatError("'eps' is reserved")
    if vs & ts:
        raise FormatError(f"variables and terminals overlap: {sorted(vs & ts)}")
    if start[0] not in vs:
        raise UndeclaredSymbol(start[0], start_line)
    rules = []
    for lineno, _, rest in entries:
        toks = _tokens(rest, lineno, ("->",))
        if len(toks) < 2 or toks[1] != "->":
            raise FormatError("expected 'rule A -> ...'", lineno)
        head, body_toks = toks[0], toks[2:]
        if head not in vs:
            raise UndeclaredSymbol(head, lineno)
        if body_toks == [EPS_TOKEN]:
            body_toks = []
        for s in body_toks:
            if s not in vs and s not in ts:
                raise UndeclaredSymbol(s, lineno)
        rules.append(Rule(head, tuple(body_toks)))
    return Cfg(variables, terminals, start[0], rules)


def _parse_fsa(body, header_line):
    fields, entries = _split_fields(
        body, {"states", "alphabet", "initial", "final"}, {"trans"}
    )
    _, states = _require(fields, "states", header_line)
    _, alphabet = fields.get("alphabet", (0, []))
    init_line, init = _require(fields, "initial", header_line)
    fin_line, finals = fields.get("final", (0, []))
    ss, al = set(states), set(alphabet)
    if EPS_TOKEN in al:
        raise FormatError("'eps' cannot be an alphabet symbol", fields["alphabet"][0])
    if len(init) != 1:
        raise FormatError("initial takes exactly one state", init_line)
    if init[0] not in ss:
        raise UndeclaredSymbol(init[0], init_line)
    for q in finals:
        if q not in ss:
            raise UndeclaredSymbol(q, fin_line)
    transitions = []
    for lineno, _, rest in entries:
        toks = _tokens(rest, lineno)
        if len(toks) != 3:
            raise FormatError("expected 'trans s label t'", lineno)
        s, b, t = toks[0], _label(toks[1]), toks[2]
        for q in (s, t):
            if q not in ss:
                raise UndeclaredSymbol(q, lineno)
        if b != EPS and b not in al:
            raise UndeclaredSymbol(b, lineno)
        transitions.append(Transition(s, b, t))
    return Fsa(states, alphabet, transitions, init[0], finals)


def _join(key, toks):
    toks = list(toks)
    return f"{key} = {' '.join(toks)}" if toks else f"{key} ="


def emit_automaton(obj: Pda | Cfg | Fsa) -> str:
    if isinstance(obj, Pda):
        out = [
            "[pda]",
            _join("states", sorted(obj.states)),
            _join("input", sorted(obj.input_alphabet)),
            _join("stack", sorted(obj.stack_alphabet)),
            f"initial = {obj.initial_state} {obj.initial_stack_symbol}",
        ]
        if obj.final_states is None:
            out.append("accept = empty-stack")
        else:
            out.append(" ".join(["accept = final-states"] + sorted(obj.final_states)))
        for a in obj.sorted_actions():
            out.append(
                " ".join(["act", a.source, a.pop, ":", a.input or EPS_TOKEN, "->", a.target, *a.push])
            )
    elif isinstance(obj, Cfg):
        out = [
            "[cfg]",
            _join("variables", sorted(obj.variables)),
            _join("terminals", sorted(obj.terminals)),
            f"start = {obj.start}",
        ]
        for r in obj.sorted_rules():
            out.append(" ".join(["rule", r.head, "->", *(r.body or (EPS_TOKEN,))]))
    elif isinstance(obj, Fsa):
        out = [
            "[fsa]",
            _join("states", sorted(obj.states)),
            _join("alphabet", sorted(obj.alphabet)),
            f"initial = {obj.initial}",
            _join("final", sorted(obj.finals)),
        ]
        for t in sorted(obj.transitions):
            out.append(f"trans {t.source} {t.label or EPS_TOKEN} {t.target}")
    else:
        raise TypeError(f"cannot emit {type(obj).__name__}")
    return "\n".join(out) + "\n"


def load(path) -> Pda | Cfg | Fsa:
    return parse_automaton(Path(path).read_text(encoding="utf-8"))


def dump(obj, path) -> None:
    Path(path).write_text(emit_automaton(obj), encoding="utf-8")
