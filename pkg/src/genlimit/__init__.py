"""Exact uniform-generation bounds for finite families of regular languages,
block-structured lower-bound families, and the machine-encoding pipeline for
context-free families."""

from .automata import (
    INFINITE,
    Automaton,
    Count,
    Infinity,
    Word,
    cardinality,
    determinize,
    empty_automaton,
    enumerate_words,
    is_deterministic,
    is_empty,
    is_finite,
    longest_word_length,
    member,
    product_intersection,
    trim,
)
from .generatability import (
    FamilySpec,
    GeneratabilityReport,
    GenerationStatus,
    SubsetReport,
    analyze,
    canonical_generate,
    is_m_generatable,
    minimal_m_oracle,
)
from .grammars import (
    Cfg,
    Pda,
    SearchCaps,
    cfg_cardinality,
    cfg_member,
    cfg_reduce,
    joint_intersection,
    pda_member,
    pda_to_cfg,
)
from .tm import (
    HaltingCase,
    HaltingVerdict,
    RunOutcome,
    RunResult,
    TuringMachine,
    decide_halting,
    decide_halting_from_pdas,
    encode,
    history_word_length,
    history_words,
    run,
)
from .witness import (
    WitnessParams,
    WitnessReport,
    build_basic,
    build_padded,
    lex_block,
    max_blocks,
    verify_witness,
)

__all__ = [
    "INFINITE",
    "Automaton",
    "Cfg",
    "Count",
    "FamilySpec",
    "GeneratabilityReport",
    "GenerationStatus",
    "HaltingCase",
    "HaltingVerdict",
    "Infinity",
    "Pda",
    "RunOutcome",
    "RunResult",
    "SearchCaps",
    "SubsetReport",
    "TuringMachine",
    "WitnessParams",
    "WitnessReport",
    "Word",
    "analyze",
    "build_basic",
    "build_padded",
    "canonical_generate",
    "cardinality",
    "cfg_cardinality",
    "cfg_member",
    "cfg_reduce",
    "decide_halting",
    "decide_halting_from_pdas",
    "determinize",
    "empty_automaton",
    "encode",
    "enumerate_words",
    "history_word_length",
    "history_words",
    "is_deterministic",
    "is_empty",
    "is_finite",
    "is_m_generatable",
    "joint_intersection",
    "lex_block",
    "longest_word_length",
    "max_blocks",
    "member",
    "minimal_m_oracle",
    "pda_member",
    "pda_to_cfg",
    "product_intersection",
    "run",
    "trim",
    "verify_witness",
]

__version__ = "0.1.0"
