"""Block-structured DFA families whose full intersection is finite but huge.

Words over {0,1} are read in aligned blocks of n bits; w_1 <= ... <= w_(2^n)
is the lexicographic ordering of the n-bit blocks.  Member i accepts words
in which any two occurrences of block w_i have some lexicographically
smaller block between them (for i = 1 this degenerates to "at most one
w_1").  Each member additionally rejects any block greater than w_k, which
is what makes the full k-member intersection finite: its words are exactly
the ruler-style block sequences, the longest having 2^k - 1 blocks.

The padded variant applies the same constraints to odd-position blocks
only, requires an even number of blocks, and leaves even-position blocks
free, which multiplies the intersection size by 2^(n * blocks) without
changing the block structure.

Degenerate guard: whenever the <= w_k restriction would leave a member with
a finite language (exactly the k = 1 families), that member is rebuilt
without the restriction so the family stays a family of infinite languages.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .automata import (
    INFINITE,
    Automaton,
    Word,
    cardinality,
    is_deterministic,
    is_finite,
    longest_word_length,
    product_intersection,
)
from .errors import BudgetExceeded, IndexOutOfRange, InvalidParams
from .generatability import FamilySpec, analyze

BASIC_STATE_BOUND = (64, 16)  # per-member DFA states <= 64*n + 16
PADDED_STATE_BOUND = (128, 32)


@dataclass(frozen=True)
class WitnessParams:
    """Block length n >= 1, family size 1 <= k <= 2^n, and the variant flag."""

    n: int
    k: int
    padded: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParams("block length n must be at least 1")
        if not 1 <= self.k <= 2**self.n:
            raise InvalidParams(
                f"family size k must satisfy 1 <= k <= 2**n; got k={self.k}, n={self.n}"
            )


def lex_block(n: int, i: int) -> Word:
    """The i-th binary word of length n in lexicographic order (1-based)."""
    if n < 1:
        raise InvalidParams("block length n must be at least 1")
    if not 1 <= i <= 2**n:
        raise IndexOutOfRange(f"block index {i} outside 1..2**{n}")
    return tuple(format(i - 1, f"0{n}b"))


def max_blocks(k: int) -> int:
    """Longest sequence over {1..k} where equal values need a smaller value
    between them: the ruler sequence f(i) = f(i-1), i, f(i-1) of length 2^k - 1."""
    if k < 1:
        raise InvalidParams("k must be at least 1")
    return 2**k - 1


def _member_automaton(n: int, i: int, k: int, padded: bool, restrict: bool) -> Automaton:
    """DFA for member i of the (n, k) family.

    States track the armed/clear repetition mode, the position inside the
    current block, and prefix comparisons of the block against w_i and
    (when restricting) against w_k.  Missing transitions reject, so the
    "block greater than w_k" and "second w_i while armed" cases simply have
    no outgoing edge.  In the padded variant the constrained machinery runs
    on odd-position blocks and a free phase consumes even-position blocks.
    """
    wi = lex_block(n, i)
    wk = lex_block(n, k)

    def block_step(mode: int, j: int, ri: str, rk: str, bit: str):
        if restrict and rk == "eq":
            if bit > wk[j]:
                return None
            rk = "eq" if bit == wk[j] else "lt"
        if ri == "eq":
            ri = "lt" if bit < wi[j] else ("eq" if bit == wi[j] else "gt")
        if j + 1 < n:
            return ("mid", mode, j + 1, ri, rk)
        if ri == "eq":
            if mode == 1:
                return None
            return ("end", 1)
        if ri == "lt":
            return ("end", 0)
        return ("end", mode)

    start = ("c", 0, 0, "eq", "eq")
    ids: dict[tuple, int] = {start: 0}
    queue: deque[tuple] = deque([start])
    transitions: set[tuple[int, str, int]] = set()
    finals: set[int] = set()

    def intern(state: tuple) -> int:
        if state not in ids:
            ids[state] = len(ids)
            queue.append(state)
        return ids[state]

    while queue:
        state = queue.popleft()
        src = ids[state]
        if state[0] == "c" and state[2] == 0:
            finals.add(src)
        for bit in ("0", "1"):
            if state[0] == "c":
                _, mode, j, ri, rk = state
                step = block_step(mode, j, ri, rk, bit)
                if step is None:
                    continue
                if step[0] == "mid":
                    nxt = ("c", step[1], step[2], step[3], step[4])
                elif padded:
                    nxt = ("f", step[1], 0)
                else:
                    nxt = ("c", step[1], 0, "eq", "eq")
            else:
                _, mode, j = state
                if j + 1 < n:
                    nxt = ("f", mode, j + 1)
                else:
                    nxt = ("c", mode, 0, "eq", "eq")
            transitions.add((src, bit, intern(nxt)))
    return Automaton(("0", "1"), len(ids), 0, frozenset(finals), frozenset(transitions))


def _build_family(p: WitnessParams) -> tuple[FamilySpec, tuple[int, ...]]:
    members = []
    relaxed = []
    for i in range(1, p.k + 1):
        a = _member_automaton(p.n, i, p.k, p.padded, restrict=True)
        if is_finite(a):
            a = _member_automaton(p.n, i, p.k, p.padded, restrict=False)
            relaxed.append(i)
        members.append((f"L{i}", a))
    return FamilySpec(tuple(members)), tuple(relaxed)


def build_basic(p: WitnessParams) -> FamilySpec:
    """The k-member basic family for block length n."""
    if p.padded:
        raise InvalidParams("build_basic needs padded=False")
    return _build_family(p)[0]


def build_padded(p: WitnessParams) -> FamilySpec:
    """The k-member padded (even-block-count, free even blocks) family."""
    if not p.padded:
        raise InvalidParams("build_padded needs padded=True")
    return _build_family(p)[0]


@dataclass(frozen=True)
class WitnessCheck:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str


@dataclass(frozen=True)
class WitnessReport:
    params: WitnessParams
    relaxed_members: tuple[int, ...]
    checks: tuple[WitnessCheck, ...]
    minimal_m: Optional[int]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


def verify_witness(p: WitnessParams, state_budget: int = 5_000_000) -> WitnessReport:
    """Check every extremal claim of the (n, k) family at desk scale.

    Verifies member infiniteness, determinism and the linear state bound,
    finiteness of the full intersection, the exact extremal word length
    n*(2^k - 1) (doubled for the padded variant), the padded cardinality
    lower bound 2^(n*(2^k - 1)), and consistency of the analyzed minimal
    bound with the full-intersection cardinality.  Raises BudgetExceeded
    when the product analysis would exceed the configured state budget.
    """
    family, relaxed = _build_family(p)
    cost = 2**p.k
    for _, a in family.members:
        cost *= a.state_count
    if cost > state_budget:
        raise BudgetExceeded(f"estimated analysis cost {cost} exceeds budget {state_budget}")

    slope, offset = PADDED_STATE_BOUND if p.padded else BASIC_STATE_BOUND
    bound = slope * p.n + offset
    checks: list[WitnessCheck] = []

    def record(name: str, passed: bool, detail: str) -> None:
        checks.append(WitnessCheck(name, "pass" if passed else "fail", detail))

    infinite = [not is_finite(a) for _, a in family.members]
    record("members_infinite", all(infinite), f"{sum(infinite)}/{len(infinite)} members infinite")
    deterministic = [is_deterministic(a) for _, a in family.members]
    record("members_deterministic", all(deterministic), f"{sum(deterministic)}/{len(deterministic)} deterministic")
    sizes = [a.state_count for _, a in family.members]
    record("member_state_bound", max(sizes) <= bound, f"max {max(sizes)} states, bound {bound}")

    degenerate = family.size == 1
    expected_longest = (2 if p.padded else 1) * p.n * max_blocks(p.k)
    if degenerate:
        checks.append(WitnessCheck("intersection_finite", "skip", "single-member family; the intersection is the (infinite) member"))
        checks.append(WitnessCheck("intersection_longest", "skip", "not applicable at k=1"))
        if p.padded:
            checks.append(WitnessCheck("padded_cardinality_bound", "skip", "not applicable at k=1"))
        report = analyze(family)
        record("minimal_m_consistent", report.minimal_m == 1, f"minimal_m {report.minimal_m}, expected 1")
        return WitnessReport(p, relaxed, tuple(checks), report.minimal_m)

    full = product_intersection(family.automata())
    card = cardinality(full)
    record("intersection_finite", card is not INFINITE, f"cardinality {card!r}")
    longest = longest_word_length(full)
    record("intersection_longest", longest == expected_longest, f"longest {longest!r}, expected {expected_longest}")
    if p.padded:
        floor = 2 ** (p.n * max_blocks(p.k))
        ok = card is not INFINITE and card >= floor
        record("padded_cardinality_bound", ok, f"cardinality {card!r}, lower bound {floor}")
    report = analyze(family)
    consistent = card is not INFINITE and report.minimal_m == 1 + card
    record("minimal_m_consistent", consistent, f"minimal_m {report.minimal_m}, full intersection {card!r}")
    return WitnessReport(p, relaxed, tuple(checks), report.minimal_m)
