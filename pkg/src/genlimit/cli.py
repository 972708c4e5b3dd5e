"""Command-line front end with byte-stable text output.

Exit status: 0 success, 1 domain errors, 2 I/O or parse errors,
3 resource caps.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import automata, formats, generatability, grammars, tm, witness
from .errors import DomainError, ParseError, ResourceError


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _cmd_analyze(args) -> int:
    family = formats.parse_family(_read(args.family))
    report = generatability.analyze(family)
    for sub in report.subsets:
        print(
            f"subset {sub.bitmask} states {sub.intersection_states}"
            f" finite {'yes' if sub.finite else 'no'}"
            f" cardinality {formats.format_count(sub.cardinality)}"
            f" longest {formats.format_longest(sub.longest)}"
        )
    print(f"minimal_m {report.minimal_m}")
    return 0


def _cmd_generate(args) -> int:
    family = formats.parse_family(_read(args.family))
    words = [formats.parse_word(text, family.alphabet) for text in args.examples.split(",")]
    result, status = generatability.canonical_generate(family, words)
    sys.stdout.write(formats.format_automaton("generated", result))
    for word in automata.enumerate_words(result, args.max_len, args.count):
        print(formats.format_word(word))
    print(f"status {status.value}")
    return 0


def _cmd_intersect(args) -> int:
    operands = [formats.parse_automaton(_read(path))[1] for path in args.files]
    product = automata.product_intersection(operands)
    sys.stdout.write(formats.format_automaton("intersection", product))
    return 0


def _cmd_count(args) -> int:
    _, a = formats.parse_automaton(_read(args.file))
    print(formats.format_count(automata.cardinality(a)))
    return 0


def _cmd_longest(args) -> int:
    _, a = formats.parse_automaton(_read(args.file))
    print(formats.format_longest(automata.longest_word_length(a)))
    return 0


def _cmd_enumerate(args) -> int:
    _, a = formats.parse_automaton(_read(args.file))
    for word in automata.enumerate_words(a, args.max_len, args.count):
        print(formats.format_word(word))
    return 0


def _cmd_member(args) -> int:
    _, a = formats.parse_automaton(_read(args.file))
    word = formats.parse_word(args.word, a.alphabet)
    print("true" if automata.member(a, word) else "false")
    return 0


def _cmd_witness_build(args) -> int:
    params = witness.WitnessParams(args.n, args.k, args.padded)
    family = witness.build_padded(params) if args.padded else witness.build_basic(params)
    Path(args.out).write_text(formats.format_family(family), encoding="utf-8")
    return 0


def _cmd_witness_verify(args) -> int:
    params = witness.WitnessParams(args.n, args.k, args.padded)
    report = witness.verify_witness(params)
    for check in report.checks:
        print(f"check {check.name} {check.status} ({check.detail})")
    print(f"minimal_m {report.minimal_m}")
    print("OK" if report.ok else "FAIL")
    return 0 if report.ok else 1


def _cmd_cfg_count(args) -> int:
    _, g = formats.parse_grammar(_read(args.file))
    print(formats.format_count(grammars.cfg_cardinality(g)))
    return 0


def _cmd_pda_to_cfg(args) -> int:
    name, p = formats.parse_pda(_read(args.file))
    sys.stdout.write(formats.format_grammar(name, grammars.pda_to_cfg(p)))
    return 0


def _cmd_pda_member(args) -> int:
    _, p = formats.parse_pda(_read(args.file))
    word = formats.parse_word(args.word, p.input_alphabet)
    print("true" if grammars.pda_member(p, word) else "false")
    return 0


def _cmd_tm_run(args) -> int:
    _, machine = formats.parse_tm(_read(args.file))
    result = tm.run(machine, args.max_configs)
    for index, config in enumerate(result.configs, start=1):
        print(f"config {index} {formats.format_word(config)}")
    if result.outcome is tm.RunOutcome.HALTED:
        print(f"halted {result.t}")
    elif result.outcome is tm.RunOutcome.STALLED:
        print(f"stalled {result.t}")
    else:
        print("timeout")
    return 0


def _cmd_tm_encode(args) -> int:
    name, machine = formats.parse_tm(_read(args.file))
    first, second = tm.encode(machine)
    Path(args.out1).write_text(formats.format_pda(f"{name}_odd", first), encoding="utf-8")
    Path(args.out2).write_text(formats.format_pda(f"{name}_even", second), encoding="utf-8")
    return 0


def _cmd_tm_intersect(args) -> int:
    _, machine = formats.parse_tm(_read(args.file))
    first, second = tm.encode(machine)
    words = grammars.joint_intersection(first, second, args.max_len)
    for word in sorted(words, key=lambda w: (len(w), w)):
        print(formats.format_word(word))
    return 0


def _cmd_decide_halting(args) -> int:
    _, machine = formats.parse_tm(_read(args.file))
    verdict = tm.decide_halting(
        machine, oracle_m=args.oracle, auto=args.oracle_auto, budget=args.budget
    )
    if verdict.halts:
        print(f"halts {verdict.t}")
    else:
        print("does-not-halt")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genlimit",
        description="Uniform generation bounds for regular-language families and the context-free halting reduction",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="per-subset intersection report and minimal_m")
    p.add_argument("family")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("generate", help="run the canonical generator on example words")
    p.add_argument("family")
    p.add_argument("--examples", required=True, help="comma-separated words; `@` is the empty word")
    p.add_argument("--max-len", type=int, default=12, dest="max_len")
    p.add_argument("--count", type=int, default=None)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("intersect", help="product intersection of automaton files")
    p.add_argument("files", nargs="+")
    p.set_defaults(fn=_cmd_intersect)

    p = sub.add_parser("count", help="exact cardinality of an automaton's language")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("longest", help="longest accepted word length")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_longest)

    p = sub.add_parser("enumerate", help="shortlex enumeration up to a length bound")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, required=True, dest="max_len")
    p.add_argument("--count", type=int, default=None)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("member", help="word membership for an automaton")
    p.add_argument("file")
    p.add_argument("word")
    p.set_defaults(fn=_cmd_member)

    w = sub.add_parser("witness", help="block-structured lower-bound families")
    wsub = w.add_subparsers(dest="witness_command", required=True)
    p = wsub.add_parser("build", help="write the family file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--padded", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_witness_build)
    p = wsub.add_parser("verify", help="check the family's extremal claims")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--padded", action="store_true")
    p.set_defaults(fn=_cmd_witness_verify)

    c = sub.add_parser("cfg", help="context-free grammar operations")
    csub = c.add_subparsers(dest="cfg_command", required=True)
    p = csub.add_parser("count", help="exact cardinality of a grammar's language")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_cfg_count)

    d = sub.add_parser("pda", help="pushdown acceptor operations")
    dsub = d.add_subparsers(dest="pda_command", required=True)
    p = dsub.add_parser("to-cfg", help="convert to an equivalent reduced grammar")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_pda_to_cfg)
    p = dsub.add_parser("member", help="word membership for a PDA")
    p.add_argument("file")
    p.add_argument("word")
    p.set_defaults(fn=_cmd_pda_member)

    t = sub.add_parser("tm", help="machine simulation and history encoding")
    tsub = t.add_subparsers(dest="tm_command", required=True)
    p = tsub.add_parser("run", help="run from the blank tape")
    p.add_argument("file")
    p.add_argument("--max-configs", type=int, required=True, dest="max_configs")
    p.set_defaults(fn=_cmd_tm_run)
    p = tsub.add_parser("encode", help="write the two history-checking PDAs")
    p.add_argument("file")
    p.add_argument("--out1", required=True)
    p.add_argument("--out2", required=True)
    p.set_defaults(fn=_cmd_tm_encode)
    p = tsub.add_parser("intersect", help="bounded joint enumeration of the encoded pair")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, required=True, dest="max_len")
    p.set_defaults(fn=_cmd_tm_intersect)

    r = sub.add_parser("reduction", help="halting decision through the encoded languages")
    rsub = r.add_subparsers(dest="reduction_command", required=True)
    p = rsub.add_parser("decide-halting")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--oracle", type=int, default=None)
    group.add_argument("--oracle-auto", action="store_true", dest="oracle_auto")
    p.add_argument("--budget", type=int, default=10_000)
    p.set_defaults(fn=_cmd_decide_halting)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
