"""Uniform generation bounds for finite families of infinite regular languages.

The characterization implemented here: a family fails to be m-generatable
exactly when some nonempty subfamily has a finite intersection of size at
least m.  The minimal uniform bound is therefore one more than the largest
finite nonempty-subfamily intersection, and the canonical generator that
attains it returns the intersection of all members containing every example.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .automata import (
    INFINITE,
    Automaton,
    Count,
    Word,
    cardinality,
    determinize,
    enumerate_words,
    is_finite,
    longest_word_length,
    member,
    product_intersection,
    trim,
)
from .errors import (
    AlphabetMismatch,
    EmptyInput,
    InconsistentExamples,
    InfiniteMemberViolation,
    InvalidParams,
    ResourceCap,
    UnknownSymbol,
)


@dataclass(frozen=True)
class FamilySpec:
    """An ordered, named, nonempty collection of automata over one alphabet.

    Every member language must be infinite; a finite member raises
    InfiniteMemberViolation at construction time.
    """

    members: tuple[tuple[str, Automaton], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple((name, a) for name, a in self.members))
        if not self.members:
            raise EmptyInput("a family needs at least one member")
        alphabet = self.members[0][1].alphabet
        for name, a in self.members:
            if a.alphabet != alphabet:
                raise AlphabetMismatch(f"member {name!r} uses alphabet {a.alphabet}, expected {alphabet}")
        for name, a in self.members:
            if is_finite(a):
                raise InfiniteMemberViolation(f"member {name!r} has a finite language")

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.members[0][1].alphabet

    @property
    def size(self) -> int:
        return len(self.members)

    def automata(self) -> tuple[Automaton, ...]:
        return tuple(a for _, a in self.members)


@dataclass(frozen=True)
class SubsetReport:
    """Analysis of one nonempty subfamily's intersection."""

    subset: tuple[int, ...]
    bitmask: int
    intersection_states: int
    empty: bool
    finite: bool
    cardinality: Count
    longest: Optional[Count]


@dataclass(frozen=True)
class GeneratabilityReport:
    """Per-subset reports in ascending bitmask order plus the minimal bound."""

    subsets: tuple[SubsetReport, ...]
    minimal_m: int


class GenerationStatus(enum.Enum):
    INFINITE = "infinite"
    FINITE = "finite"


def _subset_members(f: FamilySpec, mask: int) -> list[Automaton]:
    return [a for i, (_, a) in enumerate(f.members) if mask >> i & 1]


def analyze(f: FamilySpec) -> GeneratabilityReport:
    """Analyze every nonempty subfamily and compute the minimal uniform bound.

    minimal_m is 1 plus the maximum cardinality over subsets whose
    intersection is finite (0 when there is no such subset, so a family
    with no finite nonempty intersection gets minimal_m 1).
    """
    reports = []
    best = 0
    for mask in range(1, 1 << f.size):
        product = product_intersection(_subset_members(f, mask))
        card = cardinality(product)
        finite = card is not INFINITE
        reports.append(
            SubsetReport(
                subset=tuple(i for i in range(f.size) if mask >> i & 1),
                bitmask=mask,
                intersection_states=product.state_count,
                empty=card == 0,
                finite=finite,
                cardinality=card,
                longest=longest_word_length(product),
            )
        )
        if finite and card > best:
            best = card
    return GeneratabilityReport(subsets=tuple(reports), minimal_m=1 + best)


def is_m_generatable(f: FamilySpec, m: int) -> bool:
    """True iff no nonempty subfamily has a finite intersection of size >= m."""
    if m < 1:
        raise InvalidParams("m must be at least 1")
    return m >= analyze(f).minimal_m


@lru_cache(maxsize=64)
def _member_walkers(f: FamilySpec) -> tuple[tuple[dict[tuple[int, str], int], int, frozenset[int]], ...]:
    """Per-member trimmed DFA walk tables (delta, initial, finals)."""
    out = []
    for _, a in f.members:
        d = trim(determinize(a))
        delta = {(src, sym): dst for src, sym, dst in d.transitions}
        out.append((delta, d.initial, d.finals))
    return tuple(out)


def _walk(table: tuple[dict[tuple[int, str], int], int, frozenset[int]], word: Word) -> bool:
    delta, state, finals = table
    for sym in word:
        nxt = delta.get((state, sym))
        if nxt is None:
            return False
        state = nxt
    return state in finals


@lru_cache(maxsize=4096)
def _subset_product(f: FamilySpec, subset: tuple[int, ...]) -> tuple[Automaton, bool]:
    """Cached intersection automaton and finiteness for a member subset."""
    product = product_intersection([f.members[i][1] for i in subset])
    return product, is_finite(product)


def canonical_generate(
    f: FamilySpec, examples: Sequence[Iterable[str]]
) -> tuple[Automaton, GenerationStatus]:
    """The canonical generator: intersect all members containing every example.

    Returns the intersection automaton together with INFINITE when its
    language is infinite and FINITE otherwise.  With at least minimal_m
    distinct examples all drawn from one member, the status is always
    INFINITE and the output language is an infinite subset of that member.
    """
    words = tuple(tuple(w) for w in examples)
    if not words:
        raise InvalidParams("at least one example word is required")
    if len(set(words)) != len(words):
        raise InvalidParams("example words must be pairwise distinct")
    symbols = set(f.alphabet)
    for w in words:
        for sym in w:
            if sym not in symbols:
                raise UnknownSymbol(f"example symbol {sym!r} is not in the family alphabet")
    walkers = _member_walkers(f)
    subset = tuple(
        i for i in range(f.size) if all(_walk(walkers[i], w) for w in words)
    )
    if not subset:
        raise InconsistentExamples("no family member contains every example")
    product, finite = _subset_product(f, subset)
    status = GenerationStatus.FINITE if finite else GenerationStatus.INFINITE
    return product, status


def minimal_m_oracle(f: FamilySpec, word_budget: int = 200_000) -> int:
    """Brute-force recomputation of the minimal bound, for cross-checking.

    For each nonempty subfamily this enumerates one member's words up to
    length 2B - 1 (B = state count of the trimmed determinized intersection
    automaton, so any intersection word of length >= B pumps) and filters
    them through direct simulation of the remaining members.  Finiteness is
    decided by the absence of intersection words with length in [B, 2B).
    Intended for desk-scale families; raises ResourceCap when every member's
    enumeration would exceed the word budget.
    """
    walkers = _member_walkers(f)
    best = 0
    for mask in range(1, 1 << f.size):
        indices = [i for i in range(f.size) if mask >> i & 1]
        product = product_intersection([f.members[i][1] for i in indices])
        bound = trim(determinize(product)).state_count
        if bound == 0:
            continue
        base_words = None
        for i in indices:
            candidate = enumerate_words(f.members[i][1], 2 * bound - 1, word_budget + 1)
            if len(candidate) <= word_budget:
                base_words = candidate
                others = [j for j in indices if j != i]
                break
        if base_words is None:
            raise ResourceCap(
                f"every member of subset {indices} exceeds the {word_budget}-word budget at length {2 * bound - 1}"
            )
        common = [w for w in base_words if all(_walk(walkers[j], w) for j in others)]
        if any(len(w) >= bound for w in common):
            continue
        if len(common) > best:
            best = len(common)
    return 1 + best
