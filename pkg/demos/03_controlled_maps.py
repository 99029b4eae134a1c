"""Controlled maps on a product shift and their normal forms.

A controlled map permutes the second layer at a cell when the first layer
matches a pattern there.  Generator words are folded into a normal form
(net shift, window, permutation table), which makes long words cheap to
evaluate and to compare.
"""

from autoshift import (
    Ctrl,
    Full,
    GenWord,
    Pattern,
    Shift,
    controlled_cpnf,
    cpnf_of_word,
    golden_mean,
    is_identity_on,
    three_cycle,
)
from autoshift.autgroup import cpnf_apply, crosscheck, evaluate_word_naive
from autoshift.shifts import Alphabet

A = Alphabet(("0", "1"))
B = Alphabet(tuple("abcde"))
abc = three_cycle("a", "b", "c", B)

# Read the first layer one cell to the right: shift, test the origin, shift back.
w = GenWord((Shift((-1,)), Ctrl("1", abc), Shift((1,))))
n = cpnf_of_word(w, A, B)
print("normal form:", n, "| permutation when x_1 = 1:", n.perm_at(["1"]))

p = Pattern(tuple(((i,), (x, y)) for i, (x, y) in enumerate(zip("0101101", "aaaaaaa"))))
print("fast :", cpnf_apply(n, p))
print("naive:", evaluate_word_naive(w, p, A, B))

# A controlled map is the identity on X x Y iff its pattern is outside L(X).
gm, Y = golden_mean(), Full(B)
for u in ("11", "101"):
    print(f"C[{u}, abc] is the identity on golden mean x full:", is_identity_on(controlled_cpnf(Pattern.word(u), abc, A, B), gm, Y))

checked, bad = crosscheck(w, gm, Y)
print(f"cross-check: {checked} inputs, {len(bad)} disagreements")
