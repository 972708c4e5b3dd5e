"""Deterministic single-tape machines and their computation-history encoding.

A machine here takes no input: it starts on an all-blank, right-infinite
tape.  A configuration is the tape from cell 0 to the rightmost visited
cell with the head position carried by a composite token ``[q,a]`` (state
q scanning a).  The halting history C_1 .. C_t is encoded as the word

    C_1 #b C_2^R #b C_3 #b C_4^R ... C_t(^R when t is even) #b

with configurations alternately forward and reversed and one free
delimiter bit (#0 or #1) after each block.  ``encode`` builds two PDAs
whose intersection is exactly the set of such words: the first checks the
block format, that C_1 is the initial configuration, that the final block
is a halting configuration, and that every odd-indexed adjacent pair is a
valid machine step via push-then-compare; the second checks the block
format and every even-indexed adjacent pair.  A halting configuration has
no successor, so inside the intersection the halting block can only be the
last one, and the intersection has exactly 2^t members when the machine
halts with t configurations and is empty when it never halts.

``t`` counts configurations, not steps: a run of s steps has s + 1
configurations, and the number of free delimiter bits (hence the exponent
of 2) equals the number of configuration blocks.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .automata import INFINITE, Word, check_symbol_token
from .errors import InvalidParams, OracleRequired, ResourceCap
from .grammars import Pda, cfg_cardinality, joint_intersection, pda_to_cfg

DELIMITERS = ("#0", "#1")

_TAPE_FORBIDDEN = set("[],#")


def composite(state: int, symbol: str) -> str:
    """The head token for state q scanning a: ``[q,a]``."""
    return f"[{state},{symbol}]"


@dataclass(frozen=True)
class TuringMachine:
    """Deterministic machine without input on a single right-infinite tape.

    ``transitions`` holds 5-tuples (state, read, next_state, written, move)
    with move "L" or "R"; the table must be total on non-halting states and
    empty on halting ones.
    """

    state_count: int
    tape_alphabet: tuple[str, ...]
    blank: str
    initial: int
    halting: frozenset[int]
    transitions: frozenset[tuple[int, str, int, str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tape_alphabet", tuple(self.tape_alphabet))
        object.__setattr__(self, "halting", frozenset(self.halting))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        if self.state_count < 1:
            raise InvalidParams("a machine needs at least one state")
        if len(set(self.tape_alphabet)) != len(self.tape_alphabet):
            raise InvalidParams("duplicate tape symbols")
        for sym in self.tape_alphabet:
            check_symbol_token(sym)
            if set(sym) & _TAPE_FORBIDDEN:
                raise InvalidParams(f"tape symbol {sym!r} uses characters reserved for head/delimiter tokens")
        if self.blank not in self.tape_alphabet:
            raise InvalidParams("the blank must be a tape symbol")
        if not 0 <= self.initial < self.state_count:
            raise InvalidParams("initial state out of range")
        if not all(0 <= q < self.state_count for q in self.halting):
            raise InvalidParams("halting state out of range")
        table: dict[tuple[int, str], tuple[int, str, str]] = {}
        for q, read, q2, write, move in self.transitions:
            if not (0 <= q < self.state_count and 0 <= q2 < self.state_count):
                raise InvalidParams("transition references a missing state")
            if read not in self.tape_alphabet or write not in self.tape_alphabet:
                raise InvalidParams("transition references an undeclared tape symbol")
            if move not in ("L", "R"):
                raise InvalidParams(f"move must be L or R, got {move!r}")
            if q in self.halting:
                raise InvalidParams(f"halting state {q} must have no outgoing transitions")
            if (q, read) in table:
                raise InvalidParams(f"two transitions for state {q} reading {read!r}")
            table[(q, read)] = (q2, write, move)
        for q in range(self.state_count):
            if q in self.halting:
                continue
            for sym in self.tape_alphabet:
                if (q, sym) not in table:
                    raise InvalidParams(f"missing transition for state {q} reading {sym!r}")

    def rule(self, state: int, read: str) -> tuple[int, str, str]:
        for q, r, q2, write, move in self.transitions:
            if q == state and r == read:
                return q2, write, move
        raise KeyError((state, read))


class RunOutcome(enum.Enum):
    HALTED = "halted"
    TIMEOUT = "timeout"
    STALLED = "stalled"


@dataclass(frozen=True)
class RunResult:
    """The configuration sequence C_1 .. C_t and how the run ended.

    STALLED marks a left move attempted at cell 0: the run is cut off at
    the stalling configuration and can never halt.
    """

    configs: tuple[Word, ...]
    outcome: RunOutcome

    @property
    def t(self) -> int:
        return len(self.configs)


def run(m: TuringMachine, max_configs: int) -> RunResult:
    """Run the machine from the all-blank tape for at most max_configs
    configurations; the halting configuration is included when reached."""
    if max_configs < 1:
        raise InvalidParams("max_configs must be at least 1")
    table = {(q, r): (q2, w, mv) for q, r, q2, w, mv in m.transitions}
    tape = [m.blank]
    head = 0
    state = m.initial
    configs: list[Word] = []
    while True:
        configs.append(
            tuple(
                composite(state, sym) if pos == head else sym
                for pos, sym in enumerate(tape)
            )
        )
        if state in m.halting:
            return RunResult(tuple(configs), RunOutcome.HALTED)
        if len(configs) == max_configs:
            return RunResult(tuple(configs), RunOutcome.TIMEOUT)
        state2, write, move = table[(state, tape[head])]
        tape[head] = write
        if move == "R":
            head += 1
            if head == len(tape):
                tape.append(m.blank)
        else:
            head -= 1
            if head < 0:
                return RunResult(tuple(configs), RunOutcome.STALLED)
        state = state2


def history_word_length(configs: tuple[Word, ...]) -> int:
    """Length of the encoded history word: every block plus its delimiter."""
    return sum(len(c) + 1 for c in configs)


def history_words(m: TuringMachine, max_configs: int) -> set[Word]:
    """Independent oracle for the encoded intersection.

    Runs the machine directly; a halting run with t configurations yields
    all 2^t delimiter assignments of the alternately-reversed history word,
    a run that times out or stalls yields the empty set.
    """
    result = run(m, max_configs)
    if result.outcome is not RunOutcome.HALTED:
        return set()
    blocks = [
        config if index % 2 == 0 else tuple(reversed(config))
        for index, config in enumerate(result.configs)
    ]
    words: set[Word] = set()
    for bits in itertools.product(DELIMITERS, repeat=len(blocks)):
        word: list[str] = []
        for block, delim in zip(blocks, bits):
            word.extend(block)
            word.append(delim)
        words.add(tuple(word))
    return words


def _encoding_alphabets(m: TuringMachine) -> tuple[tuple[str, ...], tuple[str, ...], str]:
    """(input alphabet, stack alphabet, stack bottom) shared by both PDAs."""
    composites = tuple(
        composite(q, a) for q in range(m.state_count) for a in m.tape_alphabet
    )
    inputs = m.tape_alphabet + composites + DELIMITERS
    bottom = next(
        name for name in (f"Z{i}" for i in itertools.count()) if name not in inputs
    )
    stack = (bottom,) + m.tape_alphabet + composites
    return inputs, stack, bottom


def encode(m: TuringMachine) -> tuple[Pda, Pda]:
    """The two history-checking PDAs (odd-pair checker, even-pair checker).

    Neither PDA uses silent transitions, so membership search and the joint
    simulation terminate without epsilon caps.
    """
    return _encode_odd(m), _encode_even(m)


class _PdaBuilder:
    def __init__(self, m: TuringMachine):
        self.inputs, self.stack, self.bottom = _encoding_alphabets(m)
        self.ids: dict[str, int] = {}
        self.transitions: set[tuple[int, Optional[str], str, int, tuple[str, ...]]] = set()

    def state(self, name: str) -> int:
        if name not in self.ids:
            self.ids[name] = len(self.ids)
        return self.ids[name]

    def add(self, src: str, inp: str, top: str, dst: str, push: tuple[str, ...]) -> None:
        self.transitions.add((self.state(src), inp, top, self.state(dst), push))

    def build(self, initial: str, finals: tuple[str, ...]) -> Pda:
        return Pda(
            len(self.ids),
            self.inputs,
            self.stack,
            self.ids[initial],
            self.bottom,
            frozenset(self.ids[f] for f in finals),
            frozenset(self.transitions),
        )


def _encode_odd(m: TuringMachine) -> Pda:
    """Checker for C_1, the halting final block, and pairs (C_1,C_2), (C_3,C_4), ...

    Odd blocks are pushed while read; the following reversed block is
    compared against the stack, popping as it goes, with the three-way head
    zone (left move, interior right move, frontier right move that grows
    the tape by one blank) verified against the transition table.
    """
    b = _PdaBuilder(m)
    tape = m.tape_alphabet
    comps = [(q, a) for q in range(m.state_count) for a in tape]
    rules = {(q, r): (q2, w, mv) for q, r, q2, w, mv in m.transitions}
    bot = b.bottom
    b.state("init0")

    def pair_state(kind: str, q: int) -> str:
        return f"{kind}{q}"

    # C_1 must be the single-cell initial configuration.
    first = composite(m.initial, m.blank)
    b.add("init0", first, bot, "init1", (first, bot))
    for delim in DELIMITERS:
        target = "acc" if m.initial in m.halting else "bm0"
        b.add("init1", delim, first, target, (first,))

    prefix_match = ("bph", "bpn")
    for q, a in comps:
        rule = rules.get((q, a))
        top = composite(q, a)
        if rule is None:
            continue
        q2, written, move = rule
        landing = "bph" if q2 in m.halting else "bpn"
        if move == "R":
            # frontier: the reversed successor starts with the new head token
            # on a fresh blank, legal only before anything was matched.
            b.add("bm0", composite(q2, m.blank), top, pair_state("rc", q2), (top,))
            # interior and frontier alike then consume the written symbol.
            b.add(pair_state("rc", q2), written, top, landing, ())
        else:
            for state in ("bm0", "bm"):
                b.add(state, written, top, pair_state("lc", q2), ())
    for q2 in range(m.state_count):
        landing = "bph" if q2 in m.halting else "bpn"
        for d in tape:
            # interior right move: the successor's head token sits on the
            # symbol that was to the right of the old head.
            for state in ("bm0", "bm"):
                b.add(state, composite(q2, d), d, pair_state("rc", q2), ())
            # left move: the successor's head token absorbs the symbol that
            # was to the left of the old head.
            b.add(pair_state("lc", q2), composite(q2, d), d, landing, ())
    for c in tape:
        for state in ("bm0", "bm"):
            b.add(state, c, c, "bm", ())
        for state in prefix_match:
            b.add(state, c, c, state, ())
    for delim in DELIMITERS:
        b.add("bpn", delim, bot, "ascan", (bot,))
        b.add("bph", delim, bot, "acc", (bot,))
        b.add("bph", delim, bot, "ascan", (bot,))

    # Free odd blocks C_3, C_5, ...: pushed while read, exactly one head token.
    for c in tape:
        for top in (bot, *tape):
            b.add("ascan", c, top, "ascan", (c, top))
        for top in (*tape, *(composite(q, a) for q, a in comps)):
            b.add("aseen_n", c, top, "aseen_n", (c, top))
            b.add("aseen_h", c, top, "aseen_h", (c, top))
    for q, a in comps:
        token = composite(q, a)
        seen = "aseen_h" if q in m.halting else "aseen_n"
        for top in (bot, *tape):
            b.add("ascan", token, top, seen, (token, top))
    for delim in DELIMITERS:
        for top in (*tape, *(composite(q, a) for q, a in comps)):
            b.add("aseen_n", delim, top, "bm0", (top,))
            b.add("aseen_h", delim, top, "acc", (top,))
    b.state("acc")
    return b.build("init0", ("acc",))


def _encode_even(m: TuringMachine) -> Pda:
    """Checker for the block format and pairs (C_2,C_3), (C_4,C_5), ...

    The first block is format-checked without the stack; even blocks arrive
    reversed and are pushed, leaving the configuration on the stack in
    forward order, and the following odd block is compared front to back.
    """
    b = _PdaBuilder(m)
    tape = m.tape_alphabet
    comps = [(q, a) for q in range(m.state_count) for a in tape]
    rules = {(q, r): (q2, w, mv) for q, r, q2, w, mv in m.transitions}
    bot = b.bottom
    b.state("skip0")

    for c in tape:
        b.add("skip0", c, bot, "skip0", (bot,))
        b.add("skip1", c, bot, "skip1", (bot,))
    for q, a in comps:
        b.add("skip0", composite(q, a), bot, "skip1", (bot,))
    for delim in DELIMITERS:
        b.add("skip1", delim, bot, "acc", (bot,))
        b.add("skip1", delim, bot, "pscan", (bot,))

    # Push phase for a reversed block.
    for c in tape:
        for top in (bot, *tape):
            b.add("pscan", c, top, "pscan", (c, top))
        for top in (*tape, *(composite(q, a) for q, a in comps)):
            b.add("pseen", c, top, "pseen", (c, top))
    for q, a in comps:
        token = composite(q, a)
        for top in (bot, *tape):
            b.add("pscan", token, top, "pseen", (token, top))
    for delim in DELIMITERS:
        for top in (*tape, *(composite(q, a) for q, a in comps)):
            b.add("pseen", delim, top, "acc", (top,))
            b.add("pseen", delim, top, "cm", (top,))

    # Compare phase: stack holds the previous configuration forward.
    def pair_state(kind: str, q: int) -> str:
        return f"{kind}{q}"

    for q, a in comps:
        rule = rules.get((q, a))
        if rule is None:
            continue
        q2, written, move = rule
        top = composite(q, a)
        if move == "R":
            b.add("cm", written, top, pair_state("r", q2), ())
            # frontier: stack exhausted right after the old head token.
            b.add(pair_state("r", q2), composite(q2, m.blank), bot, "cpz", (bot,))
        else:
            b.add(pair_state("l", q2), written, top, "cp", ())
    for q2 in range(m.state_count):
        for d in tape:
            b.add("cm", composite(q2, d), d, pair_state("l", q2), ())
            b.add(pair_state("r", q2), composite(q2, d), d, "cp", ())
    for c in tape:
        b.add("cm", c, c, "cm", ())
        b.add("cp", c, c, "cp", ())
    for delim in DELIMITERS:
        for state in ("cp", "cpz"):
            b.add(state, delim, bot, "acc", (bot,))
            b.add(state, delim, bot, "pscan", (bot,))
    b.state("acc")
    return b.build("skip0", ("acc",))


class HaltingCase(enum.IntEnum):
    FIRST_FINITE = 1
    SECOND_FINITE = 2
    BOTH_INFINITE = 3


@dataclass(frozen=True)
class HaltingVerdict:
    halts: bool
    t: Optional[int]  # configurations used, when halting
    case: HaltingCase
    bound: int  # configurations the machine was run for


def decide_halting(
    m: TuringMachine,
    oracle_m: Optional[int] = None,
    auto: bool = False,
    budget: int = 10_000,
) -> HaltingVerdict:
    """Halting via the encoded languages, by the three-case analysis.

    Case 1: the first encoded language is finite; any halting run with t
    configurations satisfies 2^t <= |L1|, so running for T configurations
    with 2^T > |L1| is conclusive.  Case 2: symmetric for the second
    language.  Case 3: both infinite; a bound m for which the pair is
    m-generatable caps the finite intersection below m, so the smallest T
    with 2^T >= m is conclusive.  ``auto`` computes a truthful bound by
    running the machine inside the budget, purely to demonstrate the
    reduction; ``oracle_m`` must be truthful and is the caller's burden.
    """
    p1, p2 = encode(m)
    return decide_halting_from_pdas(m, p1, p2, oracle_m=oracle_m, auto=auto, budget=budget)


def decide_halting_from_pdas(
    m: TuringMachine,
    p1: Pda,
    p2: Pda,
    oracle_m: Optional[int] = None,
    auto: bool = False,
    budget: int = 10_000,
) -> HaltingVerdict:
    """The reduction core, taking the encoded pair explicitly."""
    size1 = cfg_cardinality(pda_to_cfg(p1))
    if size1 is not INFINITE:
        case = HaltingCase.FIRST_FINITE
        bound = max(1, int(size1).bit_length())
    else:
        size2 = cfg_cardinality(pda_to_cfg(p2))
        if size2 is not INFINITE:
            case = HaltingCase.SECOND_FINITE
            bound = max(1, int(size2).bit_length())
        else:
            case = HaltingCase.BOTH_INFINITE
            if oracle_m is None and not auto:
                raise OracleRequired(
                    "both encoded languages are infinite; a generatability bound is required"
                )
            if oracle_m is None:
                probe = run(m, budget)
                oracle_m = 2**probe.t + 1 if probe.outcome is RunOutcome.HALTED else 1
            if oracle_m < 1:
                raise InvalidParams("a generatability bound must be at least 1")
            bound = max(1, (oracle_m - 1).bit_length())
    if bound > budget:
        raise ResourceCap(f"required bound {bound} exceeds the run budget {budget}")
    result = run(m, bound)
    if result.outcome is RunOutcome.HALTED:
        return HaltingVerdict(True, result.t, case, bound)
    return HaltingVerdict(False, None, case, bound)
