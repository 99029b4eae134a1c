"""Block maps: local rules of finite radius.

A block map of radius ``r`` is stored as a dense integer array with one axis
per cell of ``ball(r)`` (cells in lexicographic order) and entries giving the
index of the output symbol.  Flattening that array in C order gives the
mixed-radix table used for serialization and for the canonical enumeration,
with the first ball cell as the most significant digit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .shifts import Alphabet, AlphabetError, LangAnswer, NO, YES, Verdict, language_contains
from .space import Coord, Pattern, add, ball, check_coord

MAX_BALL_CELLS = 12
MAX_TABLE_SIZE = 1 << 22


class RadiusCapError(ValueError):
    pass


def _check_cap(n_symbols: int, radius: int, dim: int) -> int:
    cells = (2 * radius + 1) ** dim
    if cells > MAX_BALL_CELLS:
        raise RadiusCapError(f"ball of radius {radius} has {cells} cells (cap {MAX_BALL_CELLS})")
    if n_symbols**cells > MAX_TABLE_SIZE:
        raise RadiusCapError(f"table of {n_symbols}^{cells} entries is too large to materialize")
    return cells


def _digits(n_symbols: int, n_cells: int) -> np.ndarray:
    """Every ball content as a row of symbol indices, in table order."""
    return np.indices((n_symbols,) * n_cells).reshape(n_cells, -1).T


@dataclass(frozen=True, eq=False)
class BlockMap:
    in_alphabet: Alphabet
    out_alphabet: Alphabet
    dim: int
    radius: int
    table: np.ndarray

    def __post_init__(self):
        cells = _check_cap(len(self.in_alphabet), self.radius, self.dim)
        table = np.asarray(self.table, dtype=np.int64).reshape((len(self.in_alphabet),) * cells)
        if table.size and (table.min() < 0 or table.max() >= len(self.out_alphabet)):
            raise ValueError("table entry out of the output alphabet")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def cells(self) -> tuple[Coord, ...]:
        return ball(self.radius, self.dim)

    @classmethod
    def from_rule(cls, in_alphabet, out_alphabet, dim: int, radius: int, rule: Callable) -> BlockMap:
        """Tabulate ``rule``, called with the ball contents as a tuple of symbols."""
        cells = _check_cap(len(in_alphabet), radius, dim)
        syms = in_alphabet.symbols
        table = [
            out_alphabet.index(rule(tuple(syms[k] for k in row)))
            for row in itertools.product(range(len(syms)), repeat=cells)
        ]
        return cls(in_alphabet, out_alphabet, dim, radius, np.array(table, dtype=np.int64))

    @classmethod
    def identity(cls, alphabet: Alphabet, dim: int = 1, radius: int = 0) -> BlockMap:
        centre = len(ball(radius, dim)) // 2
        return cls.from_rule(alphabet, alphabet, dim, radius, lambda b: b[centre])

    @classmethod
    def constant(cls, in_alphabet, out_alphabet, symbol, dim: int = 1) -> BlockMap:
        return cls.from_rule(in_alphabet, out_alphabet, dim, 0, lambda b: symbol)

    def lookup(self, contents) -> object:
        idx = tuple(self.in_alphabet.index(s) for s in contents)
        return self.out_alphabet.symbols[self.table[idx]]

    def __repr__(self) -> str:
        return f"BlockMap(r={self.radius}, dim={self.dim}, |in|={len(self.in_alphabet)}, |out|={len(self.out_alphabet)})"


def apply_local(radius: int, dim: int, rule: Callable, w: Pattern) -> Pattern:
    """Apply a local rule to every cell whose ``radius``-ball lies inside ``w``."""
    cells = ball(radius, dim)
    wm = w.mapping
    out = []
    for i in w.coords:
        neighbourhood = [add(i, c) for c in cells]
        if all(n in wm for n in neighbourhood):
            out.append((i, rule(tuple(wm[n] for n in neighbourhood))))
    if not out:
        raise ValueError("pattern too small: empty eroded support")
    return Pattern(tuple(out), dim)


def apply_to_pattern(f: BlockMap, w: Pattern) -> Pattern:
    return apply_local(f.radius, f.dim, f.lookup, w)


def _gather(f: BlockMap, digits: np.ndarray, columns: list[int]) -> np.ndarray:
    return f.table[tuple(digits[:, k] for k in columns)]


def compose(f: BlockMap, g: BlockMap) -> BlockMap:
    """The block map of ``f`` after ``g``, of radius ``r_f + r_g``."""
    if g.out_alphabet != f.in_alphabet:
        raise AlphabetError("output alphabet of g differs from input alphabet of f")
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    radius = f.radius + g.radius
    n_cells = _check_cap(len(g.in_alphabet), radius, f.dim)
    big = ball(radius, f.dim)
    pos = {c: k for k, c in enumerate(big)}
    digits = _digits(len(g.in_alphabet), n_cells)
    inner = [_gather(g, digits, [pos[add(c, b)] for b in g.cells]) for c in f.cells]
    table = f.table[tuple(inner)]
    return BlockMap(g.in_alphabet, f.out_alphabet, f.dim, radius, table)


def raise_radius(f: BlockMap, r2: int) -> BlockMap:
    """Same map written on the larger ball of radius ``r2``, ignoring the new cells."""
    if r2 < f.radius:
        raise ValueError(f"cannot lower the radius from {f.radius} to {r2}")
    if r2 == f.radius:
        return f
    n_cells = _check_cap(len(f.in_alphabet), r2, f.dim)
    pos = {c: k for k, c in enumerate(ball(r2, f.dim))}
    digits = _digits(len(f.in_alphabet), n_cells)
    table = _gather(f, digits, [pos[c] for c in f.cells])
    return BlockMap(f.in_alphabet, f.out_alphabet, f.dim, r2, table)


def _common_radius(f: BlockMap, g: BlockMap) -> tuple[BlockMap, BlockMap]:
    if f.in_alphabet != g.in_alphabet or f.out_alphabet != g.out_alphabet:
        raise AlphabetError("block maps over different alphabets")
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    r = max(f.radius, g.radius)
    return raise_radius(f, r), raise_radius(g, r)


def equal_syntactic(f: BlockMap, g: BlockMap) -> bool:
    f, g = _common_radius(f, g)
    return bool(np.array_equal(f.table, g.table))


def disagreements(f: BlockMap, g: BlockMap) -> Iterator[Pattern]:
    """Ball patterns on which the two maps, at their common radius, differ."""
    f, g = _common_radius(f, g)
    syms = f.in_alphabet.symbols
    for idx in np.argwhere(f.table != g.table):
        yield Pattern(tuple((c, syms[k]) for c, k in zip(f.cells, idx)), f.dim)


def equal_on(f: BlockMap, g: BlockMap, spec, budget: int | None = None) -> LangAnswer:
    """Do ``f`` and ``g`` define the same map on the subshift ``spec``?

    They do exactly when every ball pattern on which their tables disagree
    lies outside the language, so the question is reduced to finitely many
    language queries.
    """
    if spec.alphabet != f.in_alphabet:
        raise AlphabetError("subshift is not over the block maps' input alphabet")
    unknown = None
    for u in disagreements(f, g):
        ans = language_contains(spec, u, budget)
        if ans.yes:
            return NO
        if ans.unknown and unknown is None:
            unknown = ans
    return unknown if unknown is not None else YES


def enumerate_blockmaps(in_alphabet, out_alphabet, max_radius: int, dim: int = 1) -> Iterator[BlockMap]:
    """All block maps by increasing radius, then lexicographically by table."""
    if max_radius < 0:
        raise ValueError("max_radius must be nonnegative")
    for r in range(max_radius + 1):
        size = len(in_alphabet) ** len(ball(r, dim))
        for table in itertools.product(range(len(out_alphabet)), repeat=size):
            yield BlockMap(in_alphabet, out_alphabet, dim, r, np.array(table, dtype=np.int64))
