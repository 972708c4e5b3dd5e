"""Nondeterministic finite automata over opaque symbol tokens.

Automata here have no epsilon transitions and may have partial transition
functions: a missing transition rejects.  Symbols are arbitrary non-empty
tokens (multi-character tokens such as ``[1,_]`` or ``#0`` are fine), which
lets the same carrier serve plain binary languages and the composite
alphabets of the machine-encoding pipeline.

All values are immutable after construction and every operation is a pure
function of its inputs, so concurrent use is safe.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Optional, Sequence, Union

from .errors import AlphabetMismatch, EmptyInput, InvalidParams, UnknownSymbol

Word = tuple[str, ...]


class Infinity:
    """Singleton marker distinguishing infinite cardinalities from exact counts."""

    _instance: Optional["Infinity"] = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "infinite"


INFINITE = Infinity()

Count = Union[int, Infinity]


def is_infinite(value: object) -> bool:
    return value is INFINITE


def check_symbol_token(sym: object) -> str:
    """Validate one symbol token; returns it unchanged.

    Tokens must be non-empty, contain no whitespace and no ``.`` (the word
    separator on the command line), and may start with ``#`` only for the
    two delimiter tokens ``#0`` and ``#1`` exempted from comment stripping.
    """
    if not isinstance(sym, str) or not sym:
        raise InvalidParams(f"symbol must be a non-empty string, got {sym!r}")
    if any(c.isspace() for c in sym) or "." in sym:
        raise InvalidParams(f"symbol {sym!r} may not contain whitespace or '.'")
    if sym.startswith("#") and sym not in ("#0", "#1"):
        raise InvalidParams(f"symbol {sym!r}: '#'-prefixed tokens other than #0/#1 collide with comments")
    return sym


@dataclass(frozen=True)
class Automaton:
    """A finite acceptor: ordered alphabet, states 0..state_count-1, one
    initial state, a set of final states, and a set of transition triples.

    The empty automaton (state_count 0) is permitted as the canonical
    carrier of the empty language; its ``initial`` is 0 by convention.
    """

    alphabet: tuple[str, ...]
    state_count: int
    initial: int
    finals: frozenset[int]
    transitions: frozenset[tuple[int, str, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        for sym in self.alphabet:
            check_symbol_token(sym)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InvalidParams("alphabet symbols must be distinct")
        if self.state_count < 0:
            raise InvalidParams("state_count must be non-negative")
        if self.state_count == 0:
            if self.initial != 0 or self.finals or self.transitions:
                raise InvalidParams("empty automaton must have initial 0 and no finals or transitions")
            return
        if not 0 <= self.initial < self.state_count:
            raise InvalidParams(f"initial state {self.initial} out of range")
        for q in self.finals:
            if not 0 <= q < self.state_count:
                raise InvalidParams(f"final state {q} out of range")
        symbols = set(self.alphabet)
        for src, sym, dst in self.transitions:
            if not (0 <= src < self.state_count and 0 <= dst < self.state_count):
                raise InvalidParams(f"transition ({src}, {sym!r}, {dst}) references a missing state")
            if sym not in symbols:
                raise InvalidParams(f"transition symbol {sym!r} is not in the alphabet")


def empty_automaton(alphabet: Sequence[str]) -> Automaton:
    """The canonical zero-state acceptor of the empty language."""
    return Automaton(tuple(alphabet), 0, 0, frozenset(), frozenset())


def _nfa_delta(a: Automaton) -> dict[tuple[int, str], tuple[int, ...]]:
    out: dict[tuple[int, str], list[int]] = {}
    for src, sym, dst in a.transitions:
        out.setdefault((src, sym), []).append(dst)
    return {key: tuple(sorted(dsts)) for key, dsts in out.items()}


def is_deterministic(a: Automaton) -> bool:
    """True iff no state/symbol pair has two outgoing transitions."""
    seen: set[tuple[int, str]] = set()
    for src, sym, _ in a.transitions:
        if (src, sym) in seen:
            return False
        seen.add((src, sym))
    return True


def member(a: Automaton, word: Iterable[str]) -> bool:
    """Exact membership by direct state-set simulation."""
    word = tuple(word)
    symbols = set(a.alphabet)
    for sym in word:
        if sym not in symbols:
            raise UnknownSymbol(f"symbol {sym!r} is not in the alphabet {a.alphabet}")
    if a.state_count == 0:
        return False
    delta = _nfa_delta(a)
    current = {a.initial}
    for sym in word:
        current = {dst for q in current for dst in delta.get((q, sym), ())}
        if not current:
            return False
    return bool(current & a.finals)


def determinize(a: Automaton) -> Automaton:
    """Subset construction.

    The result is deterministic and complete over the same alphabet and
    accepts the same language; subset states are numbered in breadth-first
    discovery order (symbols explored in alphabet order) so equal inputs
    produce byte-identical outputs.
    """
    delta = _nfa_delta(a)
    start = frozenset({a.initial}) if a.state_count else frozenset()
    ids: dict[frozenset[int], int] = {start: 0}
    queue: deque[frozenset[int]] = deque([start])
    transitions: set[tuple[int, str, int]] = set()
    while queue:
        subset = queue.popleft()
        src = ids[subset]
        for sym in a.alphabet:
            target = frozenset(dst for q in subset for dst in delta.get((q, sym), ()))
            if target not in ids:
                ids[target] = len(ids)
                queue.append(target)
            transitions.add((src, sym, ids[target]))
    finals = frozenset(i for subset, i in ids.items() if subset & a.finals)
    return Automaton(a.alphabet, len(ids), 0, finals, frozenset(transitions))


def trim(a: Automaton) -> Automaton:
    """Restrict to states that lie on some initial-to-final path.

    Preserves the language; returns the zero-state automaton when the
    language is empty.  Surviving states are renumbered in ascending order
    of their old ids.
    """
    if a.state_count == 0:
        return a
    forward: dict[int, set[int]] = {}
    backward: dict[int, set[int]] = {}
    for src, _, dst in a.transitions:
        forward.setdefault(src, set()).add(dst)
        backward.setdefault(dst, set()).add(src)
    reachable = _closure({a.initial}, forward)
    coreachable = _closure(set(a.finals), backward)
    keep = reachable & coreachable
    if a.initial not in keep:
        return empty_automaton(a.alphabet)
    renumber = {old: new for new, old in enumerate(sorted(keep))}
    transitions = frozenset(
        (renumber[src], sym, renumber[dst])
        for src, sym, dst in a.transitions
        if src in keep and dst in keep
    )
    finals = frozenset(renumber[q] for q in a.finals if q in keep)
    return Automaton(a.alphabet, len(keep), renumber[a.initial], finals, transitions)


def _closure(seeds: set[int], edges: dict[int, set[int]]) -> set[int]:
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        node = stack.pop()
        for nxt in edges.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def is_empty(a: Automaton) -> bool:
    """True iff the accepted language is empty."""
    if a.state_count == 0:
        return True
    forward: dict[int, set[int]] = {}
    for src, _, dst in a.transitions:
        forward.setdefault(src, set()).add(dst)
    return not (_closure({a.initial}, forward) & a.finals)


def _topological_order(a: Automaton) -> Optional[list[int]]:
    """Topological order of a trimmed automaton's states, None if cyclic."""
    preds: dict[int, set[int]] = {q: set() for q in range(a.state_count)}
    for src, _, dst in a.transitions:
        preds[dst].add(src)
    try:
        return list(TopologicalSorter(preds).static_order())
    except CycleError:
        return None


def is_finite(a: Automaton) -> bool:
    """True iff the accepted language is finite.

    Computed as acyclicity of the trimmed automaton's transition graph:
    after trimming, every remaining cycle can be pumped.
    """
    return _topological_order(trim(a)) is not None


def cardinality(a: Automaton) -> Count:
    """Exact number of accepted words, or INFINITE.

    Always determinizes first (a no-op pass for deterministic input) so
    that accepting paths biject with words, then counts paths through the
    trimmed acyclic graph with exact integer arithmetic.
    """
    d = trim(determinize(a))
    if d.state_count == 0:
        return 0
    order = _topological_order(d)
    if order is None:
        return INFINITE
    outgoing: dict[int, list[int]] = {}
    for src, _, dst in d.transitions:
        outgoing.setdefault(src, []).append(dst)
    ways = [0] * d.state_count
    ways[d.initial] = 1
    for q in order:
        if ways[q]:
            for dst in outgoing.get(q, ()):
                ways[dst] += ways[q]
    return sum(ways[q] for q in d.finals)


def longest_word_length(a: Automaton) -> Optional[Count]:
    """Length of the longest accepted word.

    None when the language is empty, INFINITE when it is infinite, and the
    exact maximum otherwise (longest path in the trimmed deterministic
    acyclic automaton).
    """
    d = trim(determinize(a))
    if d.state_count == 0:
        return None
    order = _topological_order(d)
    if order is None:
        return INFINITE
    outgoing: dict[int, list[int]] = {}
    for src, _, dst in d.transitions:
        outgoing.setdefault(src, []).append(dst)
    dist: list[Optional[int]] = [None] * d.state_count
    dist[d.initial] = 0
    for q in order:
        if dist[q] is None:
            continue
        for dst in outgoing.get(q, ()):
            if dist[dst] is None or dist[dst] < dist[q] + 1:
                dist[dst] = dist[q] + 1
    return max(dist[q] for q in d.finals if dist[q] is not None)


def product_intersection(automata: Sequence[Automaton]) -> Automaton:
    """Product construction for the intersection of all operand languages.

    Only reachable product states are materialized, so the state count is
    at most the product of the operand state counts.  State tuples are
    numbered in breadth-first discovery order for reproducible output.
    """
    automata = list(automata)
    if not automata:
        raise EmptyInput("product_intersection needs at least one automaton")
    alphabet = automata[0].alphabet
    for a in automata[1:]:
        if a.alphabet != alphabet:
            raise AlphabetMismatch(f"alphabets differ: {alphabet} vs {a.alphabet}")
    if any(a.state_count == 0 for a in automata):
        return empty_automaton(alphabet)
    deltas = [_nfa_delta(a) for a in automata]
    start = tuple(a.initial for a in automata)
    ids: dict[tuple[int, ...], int] = {start: 0}
    queue: deque[tuple[int, ...]] = deque([start])
    transitions: set[tuple[int, str, int]] = set()
    while queue:
        combo = queue.popleft()
        src = ids[combo]
        for sym in alphabet:
            per_component = [deltas[i].get((q, sym), ()) for i, q in enumerate(combo)]
            if any(not dsts for dsts in per_component):
                continue
            for target in itertools.product(*per_component):
                if target not in ids:
                    ids[target] = len(ids)
                    queue.append(target)
                transitions.add((src, sym, ids[target]))
    finals = frozenset(
        i
        for combo, i in ids.items()
        if all(q in a.finals for q, a in zip(combo, automata))
    )
    return Automaton(alphabet, len(ids), 0, finals, frozenset(transitions))


def enumerate_words(
    a: Automaton, max_len: int, max_count: Optional[int] = None
) -> list[Word]:
    """All accepted words of length <= max_len in shortlex order.

    Shortlex means by length first, then lexicographically by the position
    of each symbol in the alphabet.  Truncated after max_count words when
    given.  The result is a materialized list and two runs on equal inputs
    produce identical sequences.
    """
    if max_len < 0:
        raise InvalidParams("max_len must be non-negative")
    if max_count is not None and max_count <= 0:
        return []
    d = trim(determinize(a))
    if d.state_count == 0:
        return []
    delta = {(src, sym): dst for src, sym, dst in d.transitions}
    out: list[Word] = []
    level: list[tuple[Word, int]] = [((), d.initial)]
    for length in range(max_len + 1):
        for word, state in level:
            if state in d.finals:
                out.append(word)
                if max_count is not None and len(out) == max_count:
                    return out
        if length == max_len:
            break
        nxt: list[tuple[Word, int]] = []
        for word, state in level:
            for sym in d.alphabet:
                dst = delta.get((state, sym))
                if dst is not None:
                    nxt.append((word + (sym,), dst))
        if not nxt:
            break
        level = nxt
    return out
