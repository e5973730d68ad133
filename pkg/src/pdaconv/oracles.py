"""Brute-force ground truth at small scale.

Nothing here shares code with the conversions: the PDA oracle simulates
moves, the CFG oracle computes bounded word sets bottom-up, the FSA oracle
walks transitions, and the actree oracle searches label choices directly.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .actree import ActTree
from .core import EPS, Cfg, Fsa, Pda, ParikhVector, Transition

Word = tuple[str, ...]


class IncompleteEnumeration(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationResult:
    words: frozenset[Word]
    complete: bool

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=lambda w: (len(w), w))


def _pop_costs(p: Pda) -> dict[tuple[str, str], dict[str, int]]:
    """Least input consumed by a quasi-run from (q, [X]) ending in q', for each reachable q'."""
    cost: dict[tuple[str, str], dict[str, int]] = {}
    acts = p.sorted_actions()
    changed = True
    while changed:
        changed = False
        for a in acts:
            cur = {a.target: int(a.input != EPS)}
            for Y in a.push:
                nxt: dict[str, int] = {}
                for r, c in cur.items():
                    for r2, c2 in cost.get((r, Y), {}).items():
                        if c + c2 < nxt.get(r2, math.inf):
                            nxt[r2] = c + c2
                cur = nxt
                if not cur:
                    break
            slot = cost.setdefault((a.source, a.pop), {})
            for r, c in cur.items():
                if c < slot.get(r, math.inf):
                    slot[r] = c
                    changed = True
    return cost


def _cheapest_unwind(cost, state, stack) -> float:
    cur = {state: 0}
    for Y in stack:
        nxt: dict[str, int] = {}
        for r, c in cur.items():
            for r2, c2 in cost.get((r, Y), {}).items():
                if c + c2 < nxt.get(r2, math.inf):
                    nxt[r2] = c + c2
        cur = nxt
        if not cur:
            return math.inf
    return min(cur.values())


def enumerate_pda_language(
    p: Pda, max_len: int, max_steps: int = 2_000_000, max_stack: int = 10_000
) -> EnumerationResult:
    """Words of length <= max_len accepted by ``p`` (empty stack or final states).

    Breadth-first over configurations (state, stack, consumed word).  Under
    empty-stack acceptance a configuration is dropped when no move sequence
    can empty its stack within ``max_len`` consumed symbols; the pruning uses
    a least-cost fixpoint over single-symbol pops, so dropped configurations
    could never have contributed a word.
    """
    by_key: dict[tuple[str, str], list] = {}
    for a in p.sorted_actions():
        by_key.setdefault((a.source, a.pop), []).append(a)
    cost = _pop_costs(p) if p.empty_stack else None
    finals = p.final_states

    start = (p.initial_state, (p.initial_stack_symbol,), ())
    seen = {start}
    queue = deque([start])
    words = set()
    complete = True
    steps = 0
    while queue:
        state, stack, word = queue.popleft()
        if finals is not None and state in finals:
            words.add(word)
        if not stack:
            if finals is None:
                words.add(word)
            continue
        steps += 1
        if steps > max_steps:
            complete = False
            break
        for a in by_key.get((state, stack[0]), ()):
            w2 = word + (a.input,) if a.input != EPS else word
            if len(w2) > max_len:
                continue
            st2 = a.push + stack[1:]
            if cost is not None and len(w2) + _cheapest_unwind(cost, a.target, st2) > max_len:
                continue
            if len(st2) > max_stack:
                complete = False
                continue
            cfg = (a.target, st2, w2)
            if cfg not in seen:
                seen.add(cfg)
                queue.append(cfg)
    return EnumerationResult(frozenset(words), complete)


def _concat_sets(parts: list[set], max_len: int, min_rest: list[int]) -> set:
    acc = {()}
    for i, part in enumerate(parts):
        nxt = set()
        budget = max_len - min_rest[i + 1]
        for u in acc:
            for v in part:
                if len(u) + len(v) <= budget:
                    nxt.add(u + v)
        acc = nxt
        if not acc:
            break
    return acc


def shortest_yields(g: Cfg) -> dict[str, float]:
    best = {v: math.inf for v in g.variables}
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            c = sum(best[s] if s in g.variables else 1 for s in rule.body)
            if c < best[rule.head]:
                best[rule.head] = c
                changed = True
    return best


def enumerate_cfg_language(g: Cfg, max_len: int) -> EnumerationResult:
    """All words of length <= max_len derivable from the start symbol.

    Least fixpoint of per-variable word sets, each truncated at max_len and
    pruned with the shortest yield of the remaining body symbols.
    """
    shortest = shortest_yields(g)
    lang: dict[str, set] = {v: set() for v in g.variables}
    rules = [r for r in g.sorted_rules() if all(shortest.get(s, 1) < math.inf for s in r.body)]
    changed = True
    while changed:
        changed = False
        for rule in rules:
            parts = [lang[s] if s in g.variables else {(s,)} for s in rule.body]
            mins = [shortest[s] if s in g.variables else 1 for s in rule.body]
            min_rest = [0] * (len(mins) + 1)
            for i in range(len(mins) - 1, -1, -1):
                min_rest[i] = min_rest[i + 1] + mins[i]
            if min_rest[0] > max_len:
                continue
            new = _concat_sets(parts, max_len, min_rest) - lang[rule.head]
            if new:
                lang[rule.head] |= new
                changed = True
    return EnumerationResult(frozenset(lang[g.start]), True)


def enumerate_fsa_language(a: Fsa, max_len: int) -> EnumerationResult:
    out: dict[str, list[Transition]] = {}
    for t in sorted(a.transitions):
        out.setdefault(t.source, []).append(t)
    start = (a.initial, ())
    seen = {start}
    queue = deque([start])
    words = set()
    while queue:
        state, word = queue.popleft()
        if state in a.finals:
            words.add(word)
        for t in out.get(state, ()):
            w2 = word + (t.label,) if t.label != EPS else word
            if len(w2) > max_len:
                continue
            cfg = (t.target, w2)
            if cfg not in seen:
                seen.add(cfg)
                queue.append(cfg)
    return EnumerationResult(frozenset(words), True)


def enumerate_language(obj: Pda | Cfg | Fsa, max_len: int, **kw) -> EnumerationResult:
    if isinstance(obj, Pda):
        return enumerate_pda_language(obj, max_len, **kw)
    if isinstance(obj, Cfg):
        return enumerate_cfg_language(obj, max_len)
    if isinstance(obj, Fsa):
        return enumerate_fsa_language(obj, max_len)
    raise TypeError(f"cannot enumerate {type(obj).__name__}")


# --- Parikh images ----------------------------------------------------------


def parikh_image(words: Iterable[Word], alphabet: Iterable[str] | None = None) -> frozenset[ParikhVector]:
    vecs = set()
    allowed = set(alphabet) if alphabet is not None else None
    for w in words:
        if allowed is not None and not set(w) <= allowed:
            raise ValueError(f"word {w} uses symbols outside {sorted(allowed)}")
        vecs.add(ParikhVector.of(w))
    return frozenset(vecs)


def _image_upto(src, max_len, **kw) -> frozenset[ParikhVector]:
    res = src if isinstance(src, EnumerationResult) else enumerate_language(src, max_len, **kw)
    if not res.complete:
        raise IncompleteEnumeration(f"enumeration of {type(src).__name__} hit its budget")
    return parikh_image(w for w in res.words if len(w) <= max_len)


def parikh_difference(src1, src2, max_len: int, **kw) -> list[ParikhVector]:
    """Parikh vectors (of words up to max_len) in exactly one of the two languages."""
    a = _image_upto(src1, max_len, **kw)
    b = _image_upto(src2, max_len, **kw)
    return sorted(a ^ b, key=lambda v: (sum(c for _, c in v.counts), v.counts))


def parikh_equiv_upto(src1, src2, max_len: int, **kw) -> bool:
    return not parikh_difference(src1, src2, max_len, **kw)


def language_difference(src1, src2, max_len: int, **kw) -> list[Word]:
    out = []
    for src in (src1, src2):
        res = src if isinstance(src, EnumerationResult) else enumerate_language(src, max_len, **kw)
        if not res.complete:
            raise IncompleteEnumeration(f"enumeration of {type(src).__name__} hit its budget")
        out.append({w for w in res.words if len(w) <= max_len})
    return sorted(out[0] ^ out[1], key=lambda w: (len(w), w))


# --- actrees ----------------------------------------------------------------


def enumerate_actrees(p: Pda, max_size: int, accepting_only: bool = True) -> list[ActTree]:
    """Every actree of ``p`` with at most ``max_size`` nodes.

    With ``accepting_only`` the roots are restricted to actions enabled at the
    initial ID; otherwise roots range over all actions.  The result is sorted
    by size, then by preorder label sequence.
    """
    by_key: dict[tuple[str, str], list] = {}
    for a in p.sorted_actions():
        by_key.setdefault((a.source, a.pop), []).append(a)

    @lru_cache(maxsize=None)
    def trees(state: str, symbol: str, n: int) -> tuple[tuple[ActTree, str], ...]:
        # actrees with exactly n nodes popping `symbol` from `state`, with exit state
        out = []
        for a in by_key.get((state, symbol), ()):
            for kids, exit_state in forests(a.target, a.push, n - 1):
                out.append((ActTree(a, kids), exit_state))
        return tuple(out)

    @lru_cache(maxsize=None)
    def forests(state: str, symbols: tuple[str, ...], n: int):
        # sequences of chained actrees popping `symbols` in order, n nodes in total
        if not symbols:
            return (((), state),) if n == 0 else ()
        if n < len(symbols):
            return ()
        out = []
        for first_size in range(1, n - len(symbols) + 2):
            for t, mid in trees(state, symbols[0], first_size):
                for rest, end in forests(mid, symbols[1:], n - first_size):
                    out.append(((t,) + rest, end))
        return tuple(out)

    if accepting_only:
        roots = [(p.initial_state, p.initial_stack_symbol)]
    else:
        roots = sorted({(a.source, a.pop) for a in p.actions})
    found = []
    for n in range(1, max_size + 1):
        for state, symbol in roots:
            found.extend(t for t, _ in trees(state, symbol, n))
    return found


# --- minimal unary FSA ------------------------------------------------------


def minimal_unary_fsa(N: int, symbol: str = "b") -> Fsa:
    """Chain of N+1 states accepting exactly symbol^N."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    states = [f"c{i}" for i in range(N + 1)]
    trans = [Transition(states[i], symbol, states[i + 1]) for i in range(N)]
    return Fsa(states, [symbol], trans, states[0], [states[-1]])
