"""Subshift languages, controlled automorphisms and the word problem they encode."""

from .autgroup import (
    CPNF,
    Ctrl,
    GenWord,
    Perm,
    Shift,
    controlled_cpnf,
    controlled_map,
    cpnf_compose,
    cpnf_equal,
    cpnf_of_word,
    evaluate_word_naive,
    invert_word,
    is_identity_on,
    partial_shift,
    three_cycle,
)
from .blockmap import BlockMap, apply_to_pattern, compose, enumerate_blockmaps, equal_on, equal_syntactic, raise_radius
from .reduction import CompileParams, compile, decompose_step, reduction_map, word_is_identity
from .shifts import (
    SFT,
    Alphabet,
    Full,
    LangAnswer,
    Product,
    SunnySideUp,
    Verdict,
    colang_semidecide,
    golden_mean,
    checkerboard,
    is_alpha_permutable,
    language_contains,
    language_enumerate,
    locally_admissible,
)
from .space import Pattern, enumerate_extensions, occurs_in, shift_pattern

__version__ = "0.1.0"
