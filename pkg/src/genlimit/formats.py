"""Line-oriented text formats for automata, families, grammars, PDAs and machines.

Shared conventions: UTF-8, whitespace-separated tokens, `#` starts a
comment.  The two delimiter tokens `#0` and `#1` are exempt from comment
stripping (a `#` immediately followed by `0` or `1` is part of a token),
which keeps machine-encoding alphabets representable.

Words in command-line arguments and outputs: symbols joined by `.`, the
empty word spelled `@`; a dot-free word whose characters are all
single-character alphabet symbols may be written compactly (`101`).
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .automata import INFINITE, Automaton, Count, Word
from .errors import ParseError, UnknownSymbol
from .generatability import FamilySpec
from .grammars import Cfg, Pda
from .tm import TuringMachine


def strip_comment(line: str) -> str:
    pos = 0
    while True:
        idx = line.find("#", pos)
        if idx < 0:
            return line
        at_token_start = idx == 0 or line[idx - 1].isspace()
        if at_token_start and not line[idx + 1 : idx + 2] in ("0", "1"):
            return line[:idx]
        pos = idx + 1


def _token_lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        tokens = strip_comment(raw).split()
        if tokens:
            out.append(tokens)
    return out


def _parse_int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise ParseError(f"{what}: expected a decimal integer, got {token!r}") from exc


class _Block:
    """One `<kind> <name> ... end` block, split into keyword lines."""

    def __init__(self, kind: str, name: str, lines: list[list[str]]):
        self.kind = kind
        self.name = name
        self.lines = lines

    def single(self, key: str) -> list[str]:
        found = [ln for ln in self.lines if ln[0] == key]
        if len(found) != 1:
            raise ParseError(f"{self.kind} {self.name!r}: expected exactly one {key!r} line")
        return found[0][1:]

    def optional(self, key: str) -> Optional[list[str]]:
        found = [ln for ln in self.lines if ln[0] == key]
        if len(found) > 1:
            raise ParseError(f"{self.kind} {self.name!r}: more than one {key!r} line")
        return found[0][1:] if found else None

    def collect(self, key: str) -> list[list[str]]:
        return [ln[1:] for ln in self.lines if ln[0] == key]


_BLOCK_KINDS = ("automaton", "grammar", "pda", "tm")


def _parse_blocks(text: str, kind: str) -> list[_Block]:
    blocks: list[_Block] = []
    current: Optional[_Block] = None
    for tokens in _token_lines(text):
        if current is None:
            if tokens[0] != kind or len(tokens) != 2:
                raise ParseError(f"expected `{kind} <name>`, got {' '.join(tokens)!r}")
            current = _Block(kind, tokens[1], [])
        elif tokens == ["end"]:
            blocks.append(current)
            current = None
        else:
            current.lines.append(tokens)
    if current is not None:
        raise ParseError(f"{kind} {current.name!r}: missing `end`")
    return blocks


# -- automata ---------------------------------------------------------------


def _automaton_from_block(block: _Block) -> Automaton:
    alphabet = tuple(block.single("alphabet"))
    states = _parse_int(block.single("states")[0], "states")
    initial = _parse_int(block.single("initial")[0], "initial")
    final_tokens = [tok for line in block.collect("final") for tok in line]
    finals = frozenset(_parse_int(tok, "final") for tok in final_tokens)
    transitions = set()
    for line in block.collect("trans"):
        if len(line) != 3:
            raise ParseError(f"automaton {block.name!r}: trans needs `<from> <sym> <to>`")
        transitions.add((_parse_int(line[0], "trans"), line[1], _parse_int(line[2], "trans")))
    return Automaton(alphabet, states, initial, finals, frozenset(transitions))


def parse_automata(text: str) -> list[tuple[str, Automaton]]:
    return [(b.name, _automaton_from_block(b)) for b in _parse_blocks(text, "automaton")]


def parse_automaton(text: str) -> tuple[str, Automaton]:
    items = parse_automata(text)
    if len(items) != 1:
        raise ParseError(f"expected exactly one automaton block, found {len(items)}")
    return items[0]


def parse_family(text: str) -> FamilySpec:
    items = parse_automata(text)
    if not items:
        raise ParseError("family file contains no automaton blocks")
    return FamilySpec(tuple(items))


def format_automaton(name: str, a: Automaton) -> str:
    index = {sym: i for i, sym in enumerate(a.alphabet)}
    lines = [
        f"automaton {name}",
        "alphabet " + " ".join(a.alphabet),
        f"states {a.state_count}",
        f"initial {a.initial}",
        "final" + "".join(f" {q}" for q in sorted(a.finals)),
    ]
    for src, sym, dst in sorted(a.transitions, key=lambda t: (t[0], index[t[1]], t[2])):
        lines.append(f"trans {src} {sym} {dst}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_family(f: FamilySpec) -> str:
    return "".join(format_automaton(name, a) for name, a in f.members)


# -- grammars ---------------------------------------------------------------


def _grammar_from_block(block: _Block) -> Cfg:
    start = block.single("start")[0]
    productions = set()
    heads = set()
    body_tokens = set()
    for line in block.collect("rule"):
        if len(line) < 2 or line[1] != "->":
            raise ParseError(f"grammar {block.name!r}: rule needs `<NT> -> <tok>...`")
        head = line[0]
        body = tuple(line[2:])
        if body == ("eps",):
            body = ()
        elif "eps" in body:
            raise ParseError(f"grammar {block.name!r}: `eps` must stand alone as a body")
        heads.add(head)
        body_tokens.update(body)
        productions.add((head, body))
    nonterminals = sorted(heads | {start})
    terminals = sorted(body_tokens - set(nonterminals))
    return Cfg(tuple(nonterminals), tuple(terminals), start, frozenset(productions))


def parse_grammar(text: str) -> tuple[str, Cfg]:
    items = [(b.name, _grammar_from_block(b)) for b in _parse_blocks(text, "grammar")]
    if len(items) != 1:
        raise ParseError(f"expected exactly one grammar block, found {len(items)}")
    return items[0]


def format_grammar(name: str, g: Cfg) -> str:
    lines = [f"grammar {name}", f"start {g.start}"]
    for head, body in sorted(g.productions):
        rhs = " ".join(body) if body else "eps"
        lines.append(f"rule {head} -> {rhs}")
    lines.append("end")
    return "\n".join(lines) + "\n"


# -- pushdown acceptors -----------------------------------------------------


def _pda_from_block(block: _Block) -> Pda:
    alphabet = tuple(block.single("alphabet"))
    stack = tuple(block.single("stack"))
    states = _parse_int(block.single("states")[0], "states")
    initial = _parse_int(block.single("initial")[0], "initial")
    stackinit = block.single("stackinit")[0]
    final_tokens = [tok for line in block.collect("final") for tok in line]
    finals = frozenset(_parse_int(tok, "final") for tok in final_tokens)
    transitions = set()
    for line in block.collect("trans"):
        if len(line) < 4:
            raise ParseError(f"pda {block.name!r}: trans needs `<q> <a|eps> <X> <q2> <push...|eps>`")
        q = _parse_int(line[0], "trans")
        read: Optional[str] = None if line[1] == "eps" else line[1]
        top = line[2]
        q2 = _parse_int(line[3], "trans")
        push = tuple(line[4:])
        if push == ("eps",):
            push = ()
        elif "eps" in push:
            raise ParseError(f"pda {block.name!r}: `eps` must stand alone as a push")
        transitions.add((q, read, top, q2, push))
    return Pda(states, alphabet, stack, initial, stackinit, finals, frozenset(transitions))


def parse_pda(text: str) -> tuple[str, Pda]:
    items = [(b.name, _pda_from_block(b)) for b in _parse_blocks(text, "pda")]
    if len(items) != 1:
        raise ParseError(f"expected exactly one pda block, found {len(items)}")
    return items[0]


def format_pda(name: str, p: Pda) -> str:
    in_index = {sym: i for i, sym in enumerate(p.input_alphabet)}
    st_index = {sym: i for i, sym in enumerate(p.stack_alphabet)}
    lines = [
        f"pda {name}",
        "alphabet " + " ".join(p.input_alphabet),
        "stack " + " ".join(p.stack_alphabet),
        f"states {p.state_count}",
        f"initial {p.initial}",
        f"stackinit {p.initial_stack}",
        "final" + "".join(f" {q}" for q in sorted(p.finals)),
    ]
    def key(t):
        q, a, x, q2, push = t
        return (q, -1 if a is None else in_index[a], st_index[x], q2, tuple(st_index[y] for y in push))
    for q, a, x, q2, push in sorted(p.transitions, key=key):
        read = "eps" if a is None else a
        pushed = " ".join(push) if push else "eps"
        lines.append(f"trans {q} {read} {x} {q2} {pushed}")
    lines.append("end")
    return "\n".join(lines) + "\n"


# -- machines ---------------------------------------------------------------


def _tm_from_block(block: _Block) -> TuringMachine:
    tape = tuple(block.single("tape"))
    blank = block.single("blank")[0]
    states = _parse_int(block.single("states")[0], "states")
    initial = _parse_int(block.single("initial")[0], "initial")
    halt_line = block.optional("halt") or []
    halting = frozenset(_parse_int(tok, "halt") for tok in halt_line)
    transitions = set()
    for line in block.collect("trans"):
        if len(line) != 5:
            raise ParseError(f"tm {block.name!r}: trans needs `<q> <a> <q2> <b> <L|R>`")
        transitions.add(
            (
                _parse_int(line[0], "trans"),
                line[1],
                _parse_int(line[2], "trans"),
                line[3],
                line[4],
            )
        )
    return TuringMachine(states, tape, blank, initial, halting, frozenset(transitions))


def parse_tm(text: str) -> tuple[str, TuringMachine]:
    items = [(b.name, _tm_from_block(b)) for b in _parse_blocks(text, "tm")]
    if len(items) != 1:
        raise ParseError(f"expected exactly one tm block, found {len(items)}")
    return items[0]


def format_tm(name: str, m: TuringMachine) -> str:
    tape_index = {sym: i for i, sym in enumerate(m.tape_alphabet)}
    lines = [
        f"tm {name}",
        "tape " + " ".join(m.tape_alphabet),
        f"blank {m.blank}",
        f"states {m.state_count}",
        f"initial {m.initial}",
        "halt" + "".join(f" {q}" for q in sorted(m.halting)),
    ]
    for q, read, q2, write, move in sorted(
        m.transitions, key=lambda t: (t[0], tape_index[t[1]])
    ):
        lines.append(f"trans {q} {read} {q2} {write} {move}")
    lines.append("end")
    return "\n".join(lines) + "\n"


# -- words ------------------------------------------------------------------


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Decode the command-line word syntax against a known alphabet."""
    if text == "@":
        return ()
    symbols = set(alphabet)
    if "." in text:
        parts = tuple(text.split("."))
        for part in parts:
            if part not in symbols:
                raise UnknownSymbol(f"word part {part!r} is not an alphabet symbol")
        return parts
    if text in symbols:
        return (text,)
    parts = tuple(text)
    for part in parts:
        if part not in symbols:
            raise UnknownSymbol(f"word character {part!r} is not an alphabet symbol")
    return parts


def format_word(word: Word) -> str:
    if not word:
        return "@"
    if all(len(sym) == 1 for sym in word):
        return "".join(word)
    return ".".join(word)


def format_count(value: Count) -> str:
    return "infinite" if value is INFINITE else str(value)


def format_longest(value: Optional[Count]) -> str:
    if value is None:
        return "none"
    return format_count(value)
