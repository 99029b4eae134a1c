"""Patterns, subshifts and their languages.

Run with ``python demos/01_patterns_and_languages.py``.
"""

import itertools

from autoshift import (
    Pattern,
    SunnySideUp,
    checkerboard,
    colang_semidecide,
    golden_mean,
    language_contains,
    language_enumerate,
)
from autoshift.space import ball

# The golden mean shift forbids two adjacent 1s.
gm = golden_mean()
for word in ("010", "0110", "10101"):
    print(f"golden mean contains {word!r}: {language_contains(gm, Pattern.word(word))}")

# Languages on a window, decided through the transition graph on 1-blocks.
print("L_{0,1,2}(golden mean) =", ["".join(p.symbols) for p in language_enumerate(gm, ball(1, 1))])

# Sunny-side-up: at most one non-bottom cell in the whole configuration.
sunny = SunnySideUp(tuple("abcde"), "_")
far_apart = Pattern.from_mapping({(0,): "a", (5,): "b"})
print("sunny-side-up contains a....b:", language_contains(sunny, far_apart))

# In two dimensions the colanguage is only semi-decidable: grow windows until
# every extension breaks a local rule.
cb = checkerboard()
diagonal = Pattern.from_mapping({(0, 0): "0", (1, 1): "1"})
square = set(itertools.product((0, 1), repeat=2))
print("checkerboard flags the diagonal mismatch at window", colang_semidecide(cb, diagonal, [square]))
print("checkerboard contains a 2x2 tile:", language_contains(cb, Pattern.from_mapping({(0, 0): "0", (1, 0): "1", (0, 1): "1", (1, 1): "0"})))
