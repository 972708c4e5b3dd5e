"""Context-free grammars and pushdown acceptors.

PDAs accept by final state with arbitrary residual stack; empty-stack
acceptance exists only as an internal stage of the PDA-to-CFG conversion.
Cardinality of a context-free language is computed exactly: reduce the
grammar, decide infiniteness via recursion through useful nonterminals,
and otherwise materialize the (necessarily finite) word set bottom-up.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

from .automata import INFINITE, Count, Word, check_symbol_token
from .errors import AlphabetMismatch, CapExceeded, InvalidParams, ResourceCap, UnknownSymbol

Production = tuple[str, tuple[str, ...]]

RESERVED_TOKENS = ("eps", "->")


def _check_grammar_token(tok: str) -> str:
    check_symbol_token(tok)
    if tok in RESERVED_TOKENS:
        raise InvalidParams(f"token {tok!r} is reserved in the grammar file format")
    return tok


@dataclass(frozen=True)
class Cfg:
    """A context-free grammar; bodies may be empty (the empty word)."""

    nonterminals: tuple[str, ...]
    terminals: tuple[str, ...]
    start: str
    productions: frozenset[Production]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(
            self, "productions", frozenset((head, tuple(body)) for head, body in self.productions)
        )
        nts, ts = set(self.nonterminals), set(self.terminals)
        if len(nts) != len(self.nonterminals) or len(ts) != len(self.terminals):
            raise InvalidParams("duplicate grammar symbols")
        if nts & ts:
            raise InvalidParams(f"nonterminals and terminals overlap: {sorted(nts & ts)}")
        for tok in itertools.chain(self.nonterminals, self.terminals):
            _check_grammar_token(tok)
        if self.start not in nts:
            raise InvalidParams(f"start symbol {self.start!r} is not a nonterminal")
        for head, body in self.productions:
            if head not in nts:
                raise InvalidParams(f"production head {head!r} is not a nonterminal")
            for tok in body:
                if tok not in nts and tok not in ts:
                    raise InvalidParams(f"undeclared symbol {tok!r} in a production body")


def cfg_reduce(g: Cfg) -> Cfg:
    """Remove non-generating and then unreachable nonterminals.

    Preserves the language; when the start symbol itself is useless the
    result is the canonical empty grammar over the same terminals.
    """
    generating: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, body in g.productions:
            if head not in generating and all(
                tok in generating or tok in g.terminals for tok in body
            ):
                generating.add(head)
                changed = True
    if g.start not in generating:
        return Cfg((g.start,), g.terminals, g.start, frozenset())
    kept = {
        (head, body)
        for head, body in g.productions
        if head in generating and all(tok in generating or tok in g.terminals for tok in body)
    }
    edges: dict[str, set[str]] = {}
    for head, body in kept:
        edges.setdefault(head, set()).update(tok for tok in body if tok in generating)
    reachable = {g.start}
    stack = [g.start]
    while stack:
        for tok in edges.get(stack.pop(), ()):
            if tok not in reachable:
                reachable.add(tok)
                stack.append(tok)
    productions = frozenset((h, b) for h, b in kept if h in reachable)
    nonterminals = tuple(nt for nt in g.nonterminals if nt in reachable)
    return Cfg(nonterminals, g.terminals, g.start, productions)


def _nullable(g: Cfg) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, body in g.productions:
            if head not in nullable and all(tok in nullable for tok in body):
                nullable.add(head)
                changed = True
    return nullable


def _strip_epsilon_and_units(g: Cfg) -> Cfg:
    """Equivalent grammar minus ε-productions and unit productions.

    The empty word may be lost; callers that care must test nullability of
    the start symbol beforehand.  Used as the normal form for the
    infiniteness test and as the first stage of the chart-parser form.
    """
    nullable = _nullable(g)
    expanded: set[Production] = set()
    for head, body in g.productions:
        optional = [idx for idx, tok in enumerate(body) if tok in nullable]
        for dropped in itertools.chain.from_iterable(
            itertools.combinations(optional, r) for r in range(len(optional) + 1)
        ):
            reduced = tuple(tok for idx, tok in enumerate(body) if idx not in set(dropped))
            if reduced:
                expanded.add((head, reduced))
    nts = set(g.nonterminals)
    unit_reach: dict[str, set[str]] = {nt: {nt} for nt in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for head, body in expanded:
            if len(body) == 1 and body[0] in nts:
                for src, targets in unit_reach.items():
                    if head in targets and body[0] not in targets:
                        targets.add(body[0])
                        changed = True
    productions: set[Production] = set()
    for head in g.nonterminals:
        for via in unit_reach[head]:
            for h, body in expanded:
                if h == via and not (len(body) == 1 and body[0] in nts):
                    productions.add((head, body))
    return Cfg(g.nonterminals, g.terminals, g.start, frozenset(productions))


def cfg_cardinality(g: Cfg, word_budget: int = 200_000) -> Count:
    """Exact number of distinct words of L(g), or INFINITE.

    Infiniteness is decided on the reduced, ε-free, unit-free normal form
    as a cycle among useful nonterminals; finite languages are materialized
    bottom-up with deduplication (ResourceCap when the materialization
    exceeds the word budget).
    """
    reduced = cfg_reduce(g)
    if not reduced.productions:
        return 0
    normal = cfg_reduce(_strip_epsilon_and_units(reduced))
    nts = set(normal.nonterminals)
    edges: dict[str, set[str]] = {}
    for head, body in normal.productions:
        edges.setdefault(head, set()).update(tok for tok in body if tok in nts)
    color: dict[str, int] = {}

    def cyclic(node: str) -> bool:
        color[node] = 1
        for nxt in edges.get(node, ()):
            c = color.get(nxt)
            if c == 1 or (c is None and cyclic(nxt)):
                return True
        color[node] = 2
        return False

    if any(color.get(nt) is None and cyclic(nt) for nt in normal.nonterminals):
        return INFINITE

    words: dict[str, set[Word]] = {nt: set() for nt in reduced.nonterminals}
    total = 0
    changed = True
    while changed:
        changed = False
        for head, body in reduced.productions:
            parts = [
                words[tok] if tok in words else {(tok,)}
                for tok in body
            ]
            if any(not p for p in parts):
                continue
            for combo in itertools.product(*parts):
                word = tuple(itertools.chain.from_iterable(combo))
                if word not in words[head]:
                    words[head].add(word)
                    total += 1
                    if total > word_budget:
                        raise ResourceCap(f"finite materialization exceeded {word_budget} words")
                    changed = True
    return len(words[reduced.start])


@lru_cache(maxsize=64)
def _chart_form(g: Cfg) -> tuple[bool, dict[str, set[str]], dict[tuple[str, str], set[str]]]:
    """(start nullable, terminal-unit map, binary-pair map) for chart parsing."""
    reduced = cfg_reduce(g)
    accepts_empty = reduced.start in _nullable(reduced)
    normal = cfg_reduce(_strip_epsilon_and_units(reduced))
    nts = set(normal.nonterminals)
    counter = itertools.count()
    productions: set[Production] = set()

    def fresh() -> str:
        return f"@{next(counter)}"

    wrappers: dict[str, str] = {}
    for head, body in normal.productions:
        if len(body) == 1:
            productions.add((head, body))
            continue
        symbols = []
        for tok in body:
            if tok in nts:
                symbols.append(tok)
            else:
                if tok not in wrappers:
                    wrappers[tok] = fresh()
                    productions.add((wrappers[tok], (tok,)))
                symbols.append(wrappers[tok])
        while len(symbols) > 2:
            left = fresh()
            productions.add((left, (symbols[0], symbols[1])))
            symbols = [left] + symbols[2:]
        productions.add((head, tuple(symbols)))

    term_map: dict[str, set[str]] = {}
    pair_map: dict[tuple[str, str], set[str]] = {}
    for head, body in productions:
        if len(body) == 1:
            term_map.setdefault(body[0], set()).add(head)
        else:
            pair_map.setdefault((body[0], body[1]), set()).add(head)
    return accepts_empty, term_map, pair_map


def cfg_member(g: Cfg, word: Iterable[str]) -> bool:
    """Exact membership by chart parsing over a binarized normal form."""
    word = tuple(word)
    terminals = set(g.terminals)
    for sym in word:
        if sym not in terminals:
            raise UnknownSymbol(f"symbol {sym!r} is not a terminal of the grammar")
    accepts_empty, term_map, pair_map = _chart_form(g)
    if not word:
        return accepts_empty
    n = len(word)
    chart: dict[tuple[int, int], set[str]] = {}
    for idx, sym in enumerate(word):
        chart[(idx, idx + 1)] = set(term_map.get(sym, ()))
    for span in range(2, n + 1):
        for lo in range(0, n - span + 1):
            hi = lo + span
            cell: set[str] = set()
            for mid in range(lo + 1, hi):
                for left in chart[(lo, mid)]:
                    for right in chart[(mid, hi)]:
                        cell.update(pair_map.get((left, right), ()))
            chart[(lo, hi)] = cell
    return g.start in chart[(0, n)]


@dataclass(frozen=True)
class Pda:
    """A pushdown acceptor; None as input symbol marks a silent transition.

    A transition (q, a, X, q2, gamma) pops stack top X, consumes a (or
    nothing when a is None), moves to q2 and pushes gamma with its first
    symbol topmost.  Acceptance is by final state after the whole input,
    with arbitrary residual stack.
    """

    state_count: int
    input_alphabet: tuple[str, ...]
    stack_alphabet: tuple[str, ...]
    initial: int
    initial_stack: str
    finals: frozenset[int]
    transitions: frozenset[tuple[int, Optional[str], str, int, tuple[str, ...]]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_alphabet", tuple(self.input_alphabet))
        object.__setattr__(self, "stack_alphabet", tuple(self.stack_alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(
            self,
            "transitions",
            frozenset((q, a, x, q2, tuple(push)) for q, a, x, q2, push in self.transitions),
        )
        if self.state_count < 1:
            raise InvalidParams("a PDA needs at least one state")
        for tok in itertools.chain(self.input_alphabet, self.stack_alphabet):
            _check_grammar_token(tok)
        if len(set(self.input_alphabet)) != len(self.input_alphabet):
            raise InvalidParams("duplicate input symbols")
        if len(set(self.stack_alphabet)) != len(self.stack_alphabet):
            raise InvalidParams("duplicate stack symbols")
        if not 0 <= self.initial < self.state_count:
            raise InvalidParams("initial state out of range")
        if self.initial_stack not in self.stack_alphabet:
            raise InvalidParams("initial stack symbol is not in the stack alphabet")
        if not all(0 <= q < self.state_count for q in self.finals):
            raise InvalidParams("final state out of range")
        inputs, stacks = set(self.input_alphabet), set(self.stack_alphabet)
        for q, a, x, q2, push in self.transitions:
            if not (0 <= q < self.state_count and 0 <= q2 < self.state_count):
                raise InvalidParams("transition references a missing state")
            if a is not None and a not in inputs:
                raise InvalidParams(f"transition input {a!r} is not in the input alphabet")
            if x not in stacks or any(y not in stacks for y in push):
                raise InvalidParams("transition references an undeclared stack symbol")


@dataclass(frozen=True)
class SearchCaps:
    """Bounds for explicit PDA configuration search."""

    max_stack: int
    max_steps: int


def _default_caps(p: Pda, length: int) -> SearchCaps:
    max_push = max((len(push) for *_rest, push in p.transitions), default=1)
    return SearchCaps(max_stack=(length + 2) * max(1, max_push) + 2, max_steps=500_000)


def pda_member(p: Pda, word: Iterable[str], caps: Optional[SearchCaps] = None) -> bool:
    """Membership by breadth-first configuration search with cycle pruning.

    Exact whenever the PDA's silent behaviour fits inside the caps (true
    for every PDA this package constructs).  Raises CapExceeded when the
    caps were hit before the word was either accepted or exhausted.
    """
    word = tuple(word)
    inputs = set(p.input_alphabet)
    for sym in word:
        if sym not in inputs:
            raise UnknownSymbol(f"symbol {sym!r} is not in the PDA input alphabet")
    caps = caps or _default_caps(p, len(word))
    delta: dict[tuple[int, Optional[str], str], list[tuple[int, tuple[str, ...]]]] = {}
    for q, a, x, q2, push in p.transitions:
        delta.setdefault((q, a, x), []).append((q2, push))
    start = (p.initial, 0, (p.initial_stack,))
    seen = {start}
    queue = deque([start])
    steps = 0
    capped = False
    while queue:
        state, pos, stack = queue.popleft()
        if pos == len(word) and state in p.finals:
            return True
        steps += 1
        if steps > caps.max_steps:
            raise CapExceeded(f"configuration search exceeded {caps.max_steps} steps")
        moves: list[tuple[int, tuple[str, ...], int]] = []
        if stack:
            top = stack[0]
            for q2, push in delta.get((state, None, top), ()):
                moves.append((q2, push, pos))
            if pos < len(word):
                for q2, push in delta.get((state, word[pos], top), ()):
                    moves.append((q2, push, pos + 1))
        for q2, push, pos2 in moves:
            stack2 = push + stack[1:]
            if len(stack2) > caps.max_stack:
                capped = True
                continue
            nxt = (q2, pos2, stack2)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    if capped:
        raise CapExceeded("stack cap hit before the search resolved")
    return False


def _normalized_pushes(p: Pda) -> Pda:
    """Equivalent PDA in which every transition pushes at most two symbols.

    A push of y1..yk (y1 topmost) becomes a push of the two deepest symbols
    followed by silent single-symbol pushes through a chain of fresh states.
    """
    if all(len(push) <= 2 for *_rest, push in p.transitions):
        return p
    transitions = []
    next_state = p.state_count
    for q, a, x, q2, push in p.transitions:
        if len(push) <= 2:
            transitions.append((q, a, x, q2, push))
            continue
        hops = list(range(next_state, next_state + len(push) - 2)) + [q2]
        next_state += len(push) - 2
        transitions.append((q, a, x, hops[0], push[-2:]))
        for idx in range(len(push) - 2):
            below_top = push[-2 - idx]
            new_top = push[-3 - idx]
            transitions.append((hops[idx], None, below_top, hops[idx + 1], (new_top, below_top)))
    return Pda(
        next_state,
        p.input_alphabet,
        p.stack_alphabet,
        p.initial,
        p.initial_stack,
        p.finals,
        frozenset(transitions),
    )


def pda_to_cfg(p: Pda) -> Cfg:
    """Grammar for L(p): final-state acceptance is first compiled down to
    empty-stack acceptance, then the standard state-pair construction maps
    stack excursions to nonterminals <q,X,r>.  The result comes reduced.
    """
    p = _normalized_pushes(p)
    bottom = next(
        name for name in (f"B{i}" for i in itertools.count()) if name not in p.stack_alphabet
    )
    start_state = p.state_count
    drain_state = p.state_count + 1
    state_count = p.state_count + 2
    stack_alphabet = p.stack_alphabet + (bottom,)
    transitions = set(p.transitions)
    transitions.add((start_state, None, bottom, p.initial, (p.initial_stack, bottom)))
    for f in p.finals:
        for x in stack_alphabet:
            transitions.add((f, None, x, drain_state, ()))
    for x in stack_alphabet:
        transitions.add((drain_state, None, x, drain_state, ()))

    succ: dict[int, set[int]] = {q: {q} for q in range(state_count)}
    for q, _a, _x, q2, _push in transitions:
        succ[q].add(q2)
    changed = True
    while changed:
        changed = False
        for q in succ:
            extra = set().union(*(succ[r] for r in set(succ[q])))
            if not extra <= succ[q]:
                succ[q] |= extra
                changed = True

    def nt(q: int, x: str, r: int) -> str:
        return f"<{q},{x},{r}>"

    productions: set[Production] = set()
    nonterminals: set[str] = {"S!"}
    start = "S!"
    for r in succ[start_state]:
        productions.add((start, (nt(start_state, bottom, r),)))
        nonterminals.add(nt(start_state, bottom, r))
    for q, a, x, q2, push in transitions:
        consumed: tuple[str, ...] = () if a is None else (a,)
        if not push:
            productions.add((nt(q, x, q2), consumed))
            nonterminals.add(nt(q, x, q2))
        elif len(push) == 1:
            for r in succ[q2]:
                productions.add((nt(q, x, r), consumed + (nt(q2, push[0], r),)))
                nonterminals.update((nt(q, x, r), nt(q2, push[0], r)))
        else:
            for mid in succ[q2]:
                for r in succ[mid]:
                    productions.add(
                        (nt(q, x, r), consumed + (nt(q2, push[0], mid), nt(mid, push[1], r)))
                    )
                    nonterminals.update(
                        (nt(q, x, r), nt(q2, push[0], mid), nt(mid, push[1], r))
                    )
    grammar = Cfg(tuple(sorted(nonterminals)), p.input_alphabet, start, frozenset(productions))
    return cfg_reduce(grammar)


def joint_intersection(
    p1: Pda,
    p2: Pda,
    max_len: int,
    config_budget: int = 2_000_000,
) -> set[Word]:
    """Exactly the words of length <= max_len accepted by both PDAs.

    Synchronized breadth-first product simulation over (consumed word,
    state 1, stack 1, state 2, stack 2) with a visited set; silent moves of
    either side interleave freely.  Stacks are capped at the height any
    accepting run of a word this short can need; CapExceeded is raised when
    the explored configuration count outgrows the budget.
    """
    if p1.input_alphabet != p2.input_alphabet:
        raise AlphabetMismatch("joint simulation needs a shared input alphabet")
    if max_len < 0:
        raise InvalidParams("max_len must be non-negative")
    caps1 = _default_caps(p1, max_len)
    caps2 = _default_caps(p2, max_len)

    def delta_of(p: Pda):
        delta: dict[tuple[int, Optional[str], str], list[tuple[int, tuple[str, ...]]]] = {}
        for q, a, x, q2, push in p.transitions:
            delta.setdefault((q, a, x), []).append((q2, push))
        return delta

    d1, d2 = delta_of(p1), delta_of(p2)
    start = ((), p1.initial, (p1.initial_stack,), p2.initial, (p2.initial_stack,))
    seen = {start}
    queue = deque([start])
    accepted: set[Word] = set()
    while queue:
        word, q1, s1, q2, s2 = queue.popleft()
        if q1 in p1.finals and q2 in p2.finals:
            accepted.add(word)

        def visit(nxt) -> None:
            if nxt not in seen:
                if len(seen) >= config_budget:
                    raise CapExceeded(f"joint simulation exceeded {config_budget} configurations")
                seen.add(nxt)
                queue.append(nxt)

        if s1:
            for r1, push in d1.get((q1, None, s1[0]), ()):
                stack = push + s1[1:]
                if len(stack) <= caps1.max_stack:
                    visit((word, r1, stack, q2, s2))
        if s2:
            for r2, push in d2.get((q2, None, s2[0]), ()):
                stack = push + s2[1:]
                if len(stack) <= caps2.max_stack:
                    visit((word, q1, s1, r2, stack))
        if len(word) < max_len and s1 and s2:
            for sym in p1.input_alphabet:
                first = d1.get((q1, sym, s1[0]), ())
                if not first:
                    continue
                second = d2.get((q2, sym, s2[0]), ())
                for r1, push1 in first:
                    stack1 = push1 + s1[1:]
                    if len(stack1) > caps1.max_stack:
                        continue
                    for r2, push2 in second:
                        stack2 = push2 + s2[1:]
                        if len(stack2) <= caps2.max_stack:
                            visit((word + (sym,), r1, stack1, r2, stack2))
    return accepted
