"""Action trees: the tree view of PDA quasi-runs.

An actree ``a(t1, ..., td)`` is labelled by an action pushing ``d`` symbols;
child ``i`` pops the ``i``-th pushed symbol, and in the preorder label
sequence each action starts in the state where the previous one ended.
Quasi-runs and actrees are converted into each other by disassembly
(cutting a run where the stack first drops below each level) and assembly
(splicing the children's runs under the still-pending pushed suffix).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import EPS, Action, Id, NotEnabled, Pda, apply_move, enabled


class InvalidTree(ValueError):
    pass


class MalformedRun(ValueError):
    pass


@dataclass(frozen=True)
class ActTree:
    label: Action
    children: tuple[ActTree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self):
        return format_tree(self)


@dataclass(frozen=True)
class QuasiRun:
    ids: tuple[Id, ...]
    actions: tuple[Action, ...]

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "actions", tuple(self.actions))

    def word(self) -> tuple[str, ...]:
        return tuple(a.input for a in self.actions if a.input != EPS)

    def check(self) -> None:
        """Raise MalformedRun unless this is a quasi-run under its own actions."""
        if len(self.ids) != len(self.actions) + 1:
            raise MalformedRun("need exactly one action per move")
        if len(self.ids[0].stack) != 1 or self.ids[-1].stack:
            raise MalformedRun("a quasi-run starts with one stack symbol and ends empty")
        for k, (a, before, after) in enumerate(zip(self.actions, self.ids, self.ids[1:])):
            if not enabled(a, before) or apply_move(a, before) != after:
                raise MalformedRun(f"move {k}: {before} does not lead to {after} via {a}")


# --- traversal --------------------------------------------------------------


def iter_seq(t: ActTree) -> Iterator[Action]:
    stack = [t]
    while stack:
        node = stack.pop()
        yield node.label
        stack.extend(reversed(node.children))


def seq(t: ActTree) -> list[Action]:
    return list(iter_seq(t))


def size(t: ActTree) -> int:
    """Node count.  Shared subtrees are counted once per occurrence, computed once."""
    cache: dict[int, int] = {}

    def go(node):
        key = id(node)
        if key not in cache:
            cache[key] = 1 + sum(go(c) for c in node.children)
        return cache[key]

    return go(t)


def consumed(t: ActTree) -> tuple[str, ...]:
    return tuple(a.input for a in iter_seq(t) if a.input != EPS)


def dimension_of(child_dims: Sequence[int]) -> int:
    if not child_dims:
        return 0
    top = max(child_dims)
    return top + 1 if child_dims.count(top) >= 2 else top


def dimension(t: ActTree) -> int:
    cache: dict[int, int] = {}

    def go(node):
        key = id(node)
        if key not in cache:
            cache[key] = dimension_of([go(c) for c in node.children])
        return cache[key]

    return go(t)


# --- validity -------------------------------------------------------------


def actree_violation(t: ActTree, p: Pda | None = None) -> str | None:
    """First violated actree condition, or None when ``t`` is an actree (of ``p``)."""
    stack = [t]
    while stack:
        node = stack.pop()
        a = node.label
        if p is not None and a not in p.actions:
            return f"{a} is not an action of the PDA"
        if len(node.children) != len(a.push):
            return f"{a} pushes {len(a.push)} symbols but has {len(node.children)} children"
        for i, (sym, child) in enumerate(zip(a.push, node.children)):
            if child.label.pop != sym:
                return f"child {i} of {a} pops {child.label.pop}, expected {sym}"
        stack.extend(node.children)
    prev = None
    for a in iter_seq(t):
        if prev is not None and prev.target != a.source:
            return f"{a} follows {prev} but starts in {a.source}"
        prev = a
    return None


def validate_actree(t: ActTree, p: Pda | None = None) -> bool:
    return actree_violation(t, p) is None


def is_accepting(t: ActTree, p: Pda) -> bool:
    return validate_actree(t, p) and enabled(t.label, p.initial_id)


# --- quasi-run <-> actree -------------------------------------------------


def tree_from_quasirun(r: QuasiRun) -> ActTree:
    """Disassemble ``r`` recursively into an actree with seq(tree) == r.actions."""
    r.check()
    return _disassemble(r.ids, r.actions)


def _disassemble(ids, actions) -> ActTree:
    a = actions[0]
    d = len(ids[1].stack)
    if d == 0:
        if len(actions) != 1:
            raise MalformedRun("stack emptied before the end of the run")
        return ActTree(a)
    # one scan: p_i is the first position after p_{i-1} where the stack has d - i symbols
    cuts = [1]
    level = d - 1
    for pos in range(2, len(ids)):
        if len(ids[pos].stack) == level:
            cuts.append(pos)
            level -= 1
            if level < 0:
                break
    if len(cuts) != d + 1 or cuts[-1] != len(ids) - 1:
        raise MalformedRun("run does not decompose into its first move and sub-quasi-runs")
    children = []
    for i in range(1, d + 1):
        lo, hi = cuts[i - 1], cuts[i]
        drop = d - i
        sub_ids = [Id(I.state, I.stack[: len(I.stack) - drop]) for I in ids[lo : hi + 1]]
        children.append(_disassemble(sub_ids, actions[lo:hi]))
    return ActTree(a, tuple(children))


def quasirun_from_tree(t: ActTree, start: Id) -> QuasiRun:
    """Assemble the quasi-run of ``t`` from ``start`` (one stack symbol, enabling the root)."""
    if len(start.stack) != 1:
        raise MalformedRun("a quasi-run starts from a single stack symbol")
    if not enabled(t.label, start):
        raise NotEnabled(f"{t.label} is not enabled at {start}")
    ids, acts = _assemble(t, start)
    return QuasiRun(tuple(ids), tuple(acts))


def _assemble(t: ActTree, start: Id):
    a = t.label
    if len(t.children) != len(a.push):
        raise InvalidTree(f"{a} has {len(t.children)} children, expected {len(a.push)}")
    first = apply_move(a, start)
    ids, acts = [start, first], [a]
    state = first.state
    for i, child in enumerate(t.children):
        sub_start = Id(state, (a.push[i],))
        if not enabled(child.label, sub_start):
            raise InvalidTree(f"child {i} of {a}: {child.label} not enabled at {sub_start}")
        sub_ids, sub_acts = _assemble(child, sub_start)
        pending = a.push[i + 1 :]
        ids.extend(Id(J.state, J.stack + pending) for J in sub_ids[1:])
        acts.extend(sub_acts)
        state = sub_ids[-1].state
    return ids, acts


# --- text form ------------------------------------------------------------


def action_index(t: ActTree) -> dict[Action, str]:
    """Name actions a1, a2, ... in order of first appearance in seq(t)."""
    names: dict[Action, str] = {}
    seen_nodes: set[int] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if node.label not in names:
            names[node.label] = f"a{len(names) + 1}"
        # a shared subtree has already contributed all its labels
        if id(node) in seen_nodes:
            continue
        seen_nodes.add(id(node))
        stack.extend(reversed(node.children))
    return names


def format_tree(t: ActTree, names: dict[Action, str] | None = None) -> str:
    if names is None:
        names = action_index(t)
    cache: dict[int, str] = {}

    def go(node):
        key = id(node)
        if key not in cache:
            s = names[node.label]
            if node.children:
                s += "(" + ",".join(go(c) for c in node.children) + ")"
            cache[key] = s
        return cache[key]

    return go(t)


def _action_text(a: Action) -> str:
    return " ".join([a.source, a.pop, ":", a.input or "eps", "->", a.target, *a.push])


def emit_actree(t: ActTree) -> str:
    names = action_index(t)
    lines = ["[actree]"]
    for a, name in sorted(names.items(), key=lambda kv: int(kv[1][1:])):
        lines.append(f"{name} = {_action_text(a)}")
    lines.append(f"tree = {format_tree(t, names)}")
    return "\n".join(lines) + "\n"


_TREE_TOKEN = re.compile(r"\s*([A-Za-z0-9_]+|[(),])")


def parse_actree(text: str) -> ActTree:
    names: dict[str, Action] = {}
    tree_src = None
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "[actree]":
        raise ValueError("expected [actree] header")
    for line in lines[1:]:
        key, _, rest = line.partition("=")
        key, rest = key.strip(), rest.split()
        if key == "tree":
            tree_src = "".join(rest)
            continue
        if len(rest) < 6 or rest[2] != ":" or rest[4] != "->":
            raise ValueError(f"bad action line {line!r}")
        b = EPS if rest[3] == "eps" else rest[3]
        names[key] = Action(rest[0], rest[1], b, rest[5], tuple(rest[6:]))
    if tree_src is None:
        raise ValueError("missing tree line")
    toks = _TREE_TOKEN.findall(tree_src)
    if "".join(toks) != tree_src:
        raise ValueError("bad characters in tree expression")
    pos = 0

    def peek():
        if pos >= len(toks):
            raise ValueError("unexpected end of tree expression")
        return toks[pos]

    def node():
        nonlocal pos
        name = peek()
        if name not in names:
            raise ValueError(f"unknown action name {name!r}")
        pos += 1
        kids = []
        if pos < len(toks) and toks[pos] == "(":
            pos += 1
            kids.append(node())
            while peek() == ",":
                pos += 1
                kids.append(node())
            if peek() != ")":
                raise ValueError("expected ')'")
            pos += 1
        return ActTree(names[name], tuple(kids))

    t = node()
    if pos != len(toks):
        raise ValueError("trailing input after tree")
    return t
