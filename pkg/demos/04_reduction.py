"""From patterns to words: the reduction to a word problem.

Any controlled map C[u, abc] is a word in unit partial shifts and
single-cell controls, built by peeling one cell of u at a time.  The word
for u is the identity on X x Y exactly when u is not in the language of X,
so the word problem decides the colanguage.
"""

import itertools

from autoshift import Full, Pattern, compile, golden_mean, language_contains, three_cycle, word_is_identity
from autoshift.autgroup import controlled_cpnf, cpnf_equal, cpnf_of_word
from autoshift.reduction import CompileParams, expected_length

params = CompileParams()
A = golden_mean().alphabet
B = params.alphabet

trace = []
word = compile(Pattern.word("010"), params, trace)
print("\n".join(trace))
print(f"{len(word)} letters (expected {expected_length(3)})")

direct = controlled_cpnf(Pattern.word("010"), three_cycle("a", "b", "c", B), A, B)
print("compiled word equals C[010, abc]:", cpnf_equal(cpnf_of_word(word, A, B), direct))

X, Y = golden_mean(), Full(B)
print("\npattern  in L(X)  word is identity")
for s in itertools.chain.from_iterable(itertools.product("01", repeat=n) for n in (2, 3)):
    u = Pattern.word(s)
    print(f"{''.join(s):>7}  {str(language_contains(X, u)):>7}  {word_is_identity(compile(u), X, Y)}")
