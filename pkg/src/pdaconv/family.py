"""The unary PDA family P(n, k) and its single accepting actree.

P(n, k) has states q0..q(n-1), input {b}, stack symbols
S, star, dollar, X0..Xk, s0..s(n-1), r0..r(n-1) (k + 2n + 4 in total) and
accepts exactly one word b^N with N >= 2^(n^2 k).  Its accepting actree is
far too large to build for anything but tiny (n, k), so it is represented
by a memo of distinct subtrees: one entry per (action, exit state), each
storing its children keys, its size and its dimension.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .actree import ActTree, dimension_of
from .core import Action, Pda

B = "b"


class InvalidParams(ValueError):
    pass


class CycleDetected(RuntimeError):
    pass


class NodeBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)) or self.n < 1 or self.k < 1:
            raise InvalidParams(f"need integers n >= 1 and k >= 1, got n={self.n!r}, k={self.k!r}")

    @property
    def p(self) -> int:
        return self.k + 2 * self.n + 4


def q(i):
    return f"q{i}"


def X(j):
    return f"X{j}"


def s(i):
    return f"s{i}"


def r(i):
    return f"r{i}"


STAR, DOLLAR, START = "star", "dollar", "S"


class _Schemas:
    """The nine action schemas for fixed (n, k)."""

    def __init__(self, n, k):
        self.n, self.k = n, k

    def start(self):
        return Action(q(0), START, B, q(0), (X(self.k), r(0)))

    def split(self, i, j, m):
        return Action(q(i), X(j), B, q(i), (X(j - 1), r(m), s(i), X(j - 1), r(m)))

    def pop_s(self, j, i):
        return Action(q(j), s(i), B, q(i))

    def pop_r(self, i):
        return Action(q(i), r(i), B, q(i))

    def push_star(self, i):
        return Action(q(i), X(0), B, q(i), (X(self.k), STAR))

    def push_dollar(self, i):
        return Action(q(i), X(0), B, q(i + 1), (X(self.k), DOLLAR))

    def pop_star(self, i):
        return Action(q(i), STAR, B, q(i - 1))

    def pop_dollar(self):
        return Action(q(0), DOLLAR, B, q(self.n - 1))

    def pop_x0(self):
        return Action(q(self.n - 1), X(0), B, q(self.n - 1))

    def all(self):
        n, k = self.n, self.k
        acts = [self.start()]
        acts += [self.split(i, j, m) for i in range(n) for m in range(n) for j in range(1, k + 1)]
        acts += [self.pop_s(j, i) for i in range(n) for j in range(n)]
        acts += [self.pop_r(i) for i in range(n)]
        acts += [self.push_star(i) for i in range(n)]
        acts += [self.push_dollar(i) for i in range(n - 1)]
        acts += [self.pop_star(i) for i in range(1, n)]
        acts += [self.pop_dollar(), self.pop_x0()]
        return acts


def family_action_count(params: FamilyParams) -> int:
    n, k = params.n, params.k
    return n * n * k + n * n + 4 * n + 1


def build_family_pda(params: FamilyParams) -> Pda:
    n, k = params.n, params.k
    stack = [START, STAR, DOLLAR] + [X(j) for j in range(k + 1)]
    stack += [s(i) for i in range(n)] + [r(i) for i in range(n)]
    return Pda(
        states=[q(i) for i in range(n)],
        input_alphabet=[B],
        stack_alphabet=stack,
        initial_state=q(0),
        initial_stack_symbol=START,
        actions=_Schemas(n, k).all(),
    )


# --- the memoised unique actree ---------------------------------------------

Key = tuple[Action, str]  # (label, state in which the subtree ends)


@dataclass(frozen=True)
class MemoEntry:
    case: str  # "1".."5", "4a" for the star push inside case 4, "leaf"
    children: tuple[Key, ...]
    size: int
    dimension: int


@dataclass
class FamilyTreeStats:
    params: FamilyParams
    root: Key
    memo: dict[Key, MemoEntry] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.memo[self.root].size

    @property
    def dimension(self) -> int:
        return self.memo[self.root].dimension

    def expand(self, node_budget: int = 10**6) -> ActTree:
        """Materialise the tree; identical subtrees are shared objects."""
        if self.size > node_budget:
            raise NodeBudgetExceeded(f"tree has {self.size} nodes, budget is {node_budget}")
        built: dict[Key, ActTree] = {}

        def go(key):
            if key not in built:
                built[key] = ActTree(key[0], tuple(go(c) for c in self.memo[key].children))
            return built[key]

        return go(self.root)


def _index(name: str) -> int:
    return int(name[1:])


def _children(sch: _Schemas, key: Key) -> tuple[str, tuple[Key, ...]]:
    """Case and children of a subtree of the accepting actree, forced by the case analysis."""
    a, exit_state = key
    n, k = sch.n, sch.k
    leaf = lambda act: (act, act.target)  # noqa: E731
    if a == sch.start():
        return "1", (
            (sch.split(0, k, 0), q(0)),
            leaf(sch.pop_r(0)),
        )
    if a.pop.startswith("X") and len(a.push) == 5:
        i, j, m = _index(a.source), _index(a.pop), _index(a.push[1])
        tail = (leaf(sch.pop_r(m)), leaf(sch.pop_s(m, i)))
        if j >= 2:
            first = (sch.split(i, j - 1, m), q(m))
            case = "2"
        elif m <= n - 2:
            first = (sch.push_star(i), q(m))
            case = "4"
        elif i < n - 1:
            first = (sch.push_dollar(i), q(n - 1))
            case = "5"
        else:
            first = leaf(sch.pop_x0())
            case = "5"
        return case, (first,) + tail + (first, tail[0])
    if a.pop == X(0) and a.push[1:] == (STAR,):
        i, m = _index(a.source), _index(exit_state)
        return "4a", ((sch.split(i, k, m + 1), q(m + 1)), leaf(sch.pop_star(m + 1)))
    if a.pop == X(0) and a.push[1:] == (DOLLAR,):
        i = _index(a.source)
        return "3", ((sch.split(i + 1, k, 0), q(0)), leaf(sch.pop_dollar()))
    if a.push:
        raise AssertionError(f"{a} cannot occur in the accepting actree")
    return "leaf", ()


def _order_key(key: Key) -> tuple[int, int, int]:
    a, exit_state = key
    return _index(a.source), _index(exit_state), _index(a.pop)


def _precedes(parent: Key, child: Key) -> bool:
    i1, f1, j1 = _order_key(parent)
    i2, f2, j2 = _order_key(child)
    return i1 < i2 or (i1 == i2 and f1 < f2) or (i1 == i2 and f1 == f2 and j1 > j2)


def build_unique_actree(params: FamilyParams) -> FamilyTreeStats:
    sch = _Schemas(params.n, params.k)
    root = (sch.start(), q(0))
    stats = FamilyTreeStats(params, root)
    memo = stats.memo
    on_path: set[Key] = set()

    # explicit DFS: (key, children computed?)
    work = [(root, None)]
    while work:
        key, info = work.pop()
        if key in memo:
            continue
        if info is None:
            if key in on_path:
                raise CycleDetected(f"subtree {key[0]} ending in {key[1]} contains itself")
            on_path.add(key)
            case, kids = _children(sch, key)
            work.append((key, (case, kids)))
            for c in reversed(kids):
                if c not in memo:
                    if c in on_path:
                        raise CycleDetected(f"subtree {c[0]} ending in {c[1]} contains itself")
                    work.append((c, None))
            continue
        case, kids = info
        if any(c not in memo for c in kids):
            # a child was pushed after this frame; should not happen in a DAG walk
            raise CycleDetected(f"unfinished children under {key[0]}")
        if case != "1":
            for c in kids:
                if memo[c].case != "leaf":
                    assert _precedes(key, c), f"order violated: {key} -> {c}"
        size = 1 + sum(memo[c].size for c in kids)
        dim = dimension_of([memo[c].dimension for c in kids])
        assert (kids[-1][1] if kids else key[0].target) == key[1], f"exit mismatch at {key}"
        memo[key] = MemoEntry(case, kids, size, dim)
        on_path.discard(key)
    return stats


def family_word_length(params: FamilyParams) -> int:
    """N such that L(P(n,k)) = {b^N}; every action consumes one b."""
    return build_unique_actree(params).size


@dataclass(frozen=True)
class BoundsReport:
    n: int
    k: int
    p: int
    N: int
    lower_2pow: int
    cfg_textbook_vars: int
    cfg_var_lower: int
    fsa_lower_states: int
    fsa_upper_states_log2: int
    max_push: int = 5
    cfg_var_lower_note: str = "asymptotic indicator (constant 1)"

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "p": self.p,
            "N": self.N,
            "N_log2": round(math.log2(self.N), 6),
            "lower_2pow_log2": self.n * self.n * self.k,
            "lower_2pow": self.lower_2pow,
            "cfg_textbook_vars": self.cfg_textbook_vars,
            "cfg_var_lower": self.cfg_var_lower,
            "cfg_var_lower_note": self.cfg_var_lower_note,
            "fsa_lower_states": self.fsa_lower_states,
            "fsa_upper_states_log2": self.fsa_upper_states_log2,
            "max_push": self.max_push,
        }


def bounds_report(params: FamilyParams, N: int | None = None) -> BoundsReport:
    n, k, p = params.n, params.k, params.p
    if N is None:
        N = family_word_length(params)
    return BoundsReport(
        n=n,
        k=k,
        p=p,
        N=N,
        lower_2pow=2 ** (n * n * k),
        cfg_textbook_vars=n * n * p + 1 if n > 1 else p,
        cfg_var_lower=N.bit_length() - 1,
        fsa_lower_states=N + 1,
        fsa_upper_states_log2=2 * n * n * p,
    )
