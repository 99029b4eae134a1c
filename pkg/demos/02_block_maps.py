"""Block maps and deciding their equality on a subshift.

Two local rules define the same map on X exactly when every ball pattern
where their tables differ is outside the language of X.
"""

from autoshift import BlockMap, Full, Pattern, compose, golden_mean
from autoshift.blockmap import apply_to_pattern, disagreements, equal_on, equal_syntactic
from autoshift.shifts import Alphabet

binary = Alphabet(("0", "1"))
xor = BlockMap.from_rule(binary, binary, 1, 1, lambda b: str((int(b[0]) + int(b[2])) % 2))
print("xor on 0110 ->", apply_to_pattern(xor, Pattern.word("0110")))

left = BlockMap.from_rule(binary, binary, 1, 1, lambda b: b[2])
right = BlockMap.from_rule(binary, binary, 1, 1, lambda b: b[0])
print("left o right is the identity:", equal_syntactic(compose(left, right), BlockMap.identity(binary)))

# The identity with its "111" entry flipped.
ident = BlockMap.identity(binary, 1, 1)
table = ident.table.reshape(-1).copy()
table[-1] = 0
flipped = BlockMap(binary, binary, 1, 1, table)
print("tables differ on", [str(p) for p in disagreements(ident, flipped)])
print("equal on the golden mean:", equal_on(ident, flipped, golden_mean()))
print("equal on the full shift:", equal_on(ident, flipped, Full(binary)))
