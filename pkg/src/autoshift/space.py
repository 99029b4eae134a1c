"""Lattice coordinates, windows and finite patterns over Z^d, d in {1, 2}.

Coordinates are plain tuples of ints, windows are frozensets of coordinates.
Patterns are immutable and hashable; their cells are kept sorted by
coordinate so that two equal patterns always compare (and serialize) equal.

Sign convention, used by every other module: configurations are shifted by
``shift(x, g)[j] = x[g + j]`` and ``shift_pattern(w, g)`` moves the support of
``w`` to ``supp(w) + g``, so that the cylinder of the shifted pattern is the
image of the cylinder of ``w`` under the shift by ``-g``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

Coord = tuple[int, ...]
Symbol = Hashable
Window = frozenset

COORD_LIMIT = 2**31


def check_coord(c, dim: int | None = None) -> Coord:
    c = tuple(int(v) for v in c)
    if dim is not None and len(c) != dim:
        raise ValueError(f"coordinate {c} is not {dim}-dimensional")
    if len(c) not in (1, 2):
        raise ValueError(f"only d = 1 or d = 2 is supported, got {c}")
    if any(abs(v) >= COORD_LIMIT for v in c):
        raise OverflowError(f"coordinate {c} out of range")
    return c


def add(a: Coord, b: Coord) -> Coord:
    return check_coord(x + y for x, y in zip(a, b, strict=True))


def sub(a: Coord, b: Coord) -> Coord:
    return check_coord(x - y for x, y in zip(a, b, strict=True))


def neg(a: Coord) -> Coord:
    return tuple(-x for x in a)


def zero(dim: int) -> Coord:
    return (0,) * dim


def norm_inf(a: Coord) -> int:
    return max((abs(x) for x in a), default=0)


def norm_1(a: Coord) -> int:
    return sum(abs(x) for x in a)


def unit_vectors(dim: int) -> list[Coord]:
    """Positive unit vectors, x axis first."""
    return [tuple(int(i == k) for i in range(dim)) for k in range(dim)]


def ball(r: int, dim: int) -> tuple[Coord, ...]:
    """Cells at max-norm distance at most ``r``, sorted lexicographically."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return tuple(itertools.product(range(-r, r + 1), repeat=dim))


def translate(cells: Iterable[Coord], g: Coord) -> Window:
    return frozenset(add(c, g) for c in cells)


def bounding_box(cells: Iterable[Coord], dim: int) -> Window:
    cells = list(cells)
    if not cells:
        return frozenset()
    lo = [min(c[k] for c in cells) for k in range(dim)]
    hi = [max(c[k] for c in cells) for k in range(dim)]
    return frozenset(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))


def dilate(cells: Iterable[Coord], r: int, dim: int) -> Window:
    """Minkowski sum of ``cells`` with ``ball(r)``."""
    return frozenset(add(c, b) for c in cells for b in ball(r, dim))


@dataclass(frozen=True)
class Pattern:
    """A finite pattern: symbols assigned to a finite set of cells.

    ``cells`` is a tuple of ``(coord, symbol)`` pairs sorted by coordinate;
    use :meth:`from_mapping` or :meth:`word` rather than building it by hand.
    """

    cells: tuple[tuple[Coord, Symbol], ...]
    dim: int = 1

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError("only d = 1 or d = 2 is supported")
        cells = tuple((check_coord(c, self.dim), s) for c, s in self.cells)
        coords = [c for c, _ in cells]
        if len(set(coords)) != len(coords):
            raise ValueError("duplicate coordinate in pattern")
        object.__setattr__(self, "cells", tuple(sorted(cells, key=lambda cs: cs[0])))

    @classmethod
    def from_mapping(cls, mapping: Mapping[Coord, Symbol], dim: int | None = None) -> Pattern:
        items = [(tuple(c), s) for c, s in mapping.items()]
        if dim is None:
            dim = len(items[0][0]) if items else 1
        return cls(tuple(items), dim)

    @classmethod
    def word(cls, symbols: Sequence[Symbol], start: int = 0) -> Pattern:
        """1D pattern spelling ``symbols`` on ``start, start+1, ...``.

        >>> Pattern.word("011").support == frozenset({(0,), (1,), (2,)})
        True
        """
        return cls(tuple(((start + k,), s) for k, s in enumerate(symbols)), 1)

    @classmethod
    def empty(cls, dim: int = 1) -> Pattern:
        return cls((), dim)

    @cached_property
    def mapping(self) -> dict[Coord, Symbol]:
        return dict(self.cells)

    @property
    def support(self) -> Window:
        return frozenset(self.mapping)

    @property
    def coords(self) -> tuple[Coord, ...]:
        return tuple(c for c, _ in self.cells)

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(s for _, s in self.cells)

    @property
    def radius(self) -> int:
        """Max-norm radius of the smallest origin-centred ball holding the support."""
        return max((norm_inf(c) for c in self.coords), default=0)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[tuple[Coord, Symbol]]:
        return iter(self.cells)

    def __getitem__(self, c: Coord) -> Symbol:
        return self.mapping[tuple(c)]

    def __contains__(self, c) -> bool:
        return tuple(c) in self.mapping

    def restrict(self, cells: Iterable[Coord]) -> Pattern:
        m = self.mapping
        return Pattern(tuple((c, m[c]) for c in map(tuple, cells) if c in m), self.dim)

    def project(self, k: int) -> Pattern:
        """Component ``k`` of a pattern over a product alphabet."""
        return Pattern(tuple((c, s[k]) for c, s in self.cells), self.dim)

    def __str__(self) -> str:
        if self.dim == 1 and self.cells:
            lo, hi = self.coords[0][0], self.coords[-1][0]
            if hi - lo + 1 == len(self.cells) and all(isinstance(s, str) and len(s) == 1 for s in self.symbols):
                return "".join(self.symbols) + (f"@{lo}" if lo else "")
        return "{" + ", ".join(f"{c}:{s}" for c, s in self.cells) + "}"


def zip_patterns(left: Pattern, right: Pattern) -> Pattern:
    """Pair two patterns on the same support into one over the product alphabet."""
    if left.support != right.support:
        raise ValueError("patterns must share a support")
    return Pattern(tuple((c, (s, right[c])) for c, s in left.cells), left.dim)


def shift_pattern(w: Pattern, g: Coord) -> Pattern:
    g = check_coord(g, w.dim)
    return Pattern(tuple((add(c, g), s) for c, s in w.cells), w.dim)


def occurs_in(v: Pattern, w: Pattern) -> bool:
    """True iff some translate of ``v`` is a restriction of ``w``."""
    if not v.cells:
        return True
    anchor, _ = v.cells[0]
    wm = w.mapping
    for c in wm:
        t = sub(c, anchor)
        if all(wm.get(add(cell, t)) == s for cell, s in v.cells):
            return True
    return False


def enumerate_extensions(w: Pattern, window: Iterable[Coord], alphabet) -> Iterator[Pattern]:
    """All patterns on ``window`` agreeing with ``w`` on its support.

    Free cells are filled in lexicographic order of coordinates, symbols in
    alphabet order, so the output order is deterministic.
    """
    window = frozenset(check_coord(c, w.dim) for c in window)
    if not w.support <= window:
        raise ValueError("window does not contain the pattern's support")
    free = sorted(window - w.support)
    for fill in itertools.product(tuple(alphabet), repeat=len(free)):
        yield Pattern(w.cells + tuple(zip(free, fill)), w.dim)


def all_patterns(window: Iterable[Coord], alphabet, dim: int) -> Iterator[Pattern]:
    return enumerate_extensions(Pattern.empty(dim), window, alphabet)
