"""Controlled maps, partial shifts and words over them, on a product ``X x Y``.

Every element of the group generated by partial shifts and controlled maps
acts as ``(x, y) -> (shift(x, h), y')`` where ``y'_i = rho(x restricted to
i + W)(y_i)``: the first layer is only translated and the second layer is
permuted cell by cell, conditioned on a finite window of the first layer.
:class:`CPNF` stores exactly that triple ``(h, W, rho)``, trimmed to the cells
``rho`` really depends on, which makes it a canonical form.

Words are read as compositions: the word ``l1 l2 ... lk`` is the map
``l1 o l2 o ... o lk``, so the rightmost letter acts first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .blockmap import BlockMap, apply_local, _check_cap, _digits
from .shifts import (
    Alphabet,
    AlphabetError,
    Full,
    LangAnswer,
    NO,
    SunnySideUp,
    YES,
    enumerate_extensions,
    language_contains,
    language_enumerate,
    single_cell_letters,
)
from .space import Coord, Pattern, add, ball, check_coord, neg, norm_inf, zero

MAX_WINDOW = 16


class WindowCapError(ValueError):
    pass


# -- permutations -----------------------------------------------------------


@dataclass(frozen=True)
class Perm:
    """A permutation of a finite alphabet, stored as the tuple of image indices."""

    alphabet: Alphabet
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(k) for k in self.images)
        if sorted(images) != list(range(len(self.alphabet))):
            raise ValueError(f"{images} is not a bijection of a {len(self.alphabet)}-letter alphabet")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> Perm:
        return cls(alphabet, tuple(range(len(alphabet))))

    @classmethod
    def from_mapping(cls, alphabet: Alphabet, mapping: dict) -> Perm:
        return cls(alphabet, tuple(alphabet.index(mapping.get(s, s)) for s in alphabet))

    def __call__(self, s):
        return self.alphabet.symbols[self.images[self.alphabet.index(s)]]

    def __mul__(self, other: Perm) -> Perm:
        """``self o other``: apply ``other`` first."""
        if self.alphabet != other.alphabet:
            raise AlphabetError("permutations over different alphabets")
        return Perm(self.alphabet, tuple(self.images[k] for k in other.images))

    def __pow__(self, n: int) -> Perm:
        result = Perm.identity(self.alphabet)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = base * result
        return result

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for k, v in enumerate(self.images):
            inv[v] = k
        return Perm(self.alphabet, tuple(inv))

    def is_identity(self, on: Iterable | None = None) -> bool:
        symbols = self.alphabet.symbols if on is None else on
        return all(self(s) == s for s in symbols)

    def moved(self) -> tuple:
        return tuple(s for s in self.alphabet if self(s) != s)

    def extend_to(self, alphabet: Alphabet) -> Perm:
        """The same permutation on a larger alphabet, fixing the new symbols."""
        if alphabet == self.alphabet:
            return self
        if not all(s in alphabet for s in self.alphabet):
            raise AlphabetError(f"{alphabet} does not contain {self.alphabet}")
        return Perm.from_mapping(alphabet, {s: self(s) for s in self.alphabet})

    def cycle3(self) -> tuple | None:
        """``(a, b, c)`` if this is the 3-cycle a -> b -> c -> a, with ``a`` earliest."""
        moved = self.moved()
        if len(moved) != 3:
            return None
        a = moved[0]
        b = self(a)
        c = self(b)
        return (a, b, c) if self(c) == a else None

    def __repr__(self) -> str:
        if self.is_identity():
            return "Perm(id)"
        return "Perm(" + " ".join(f"{s}->{self(s)}" for s in self.moved()) + ")"


def three_cycle(a, b, c, alphabet: Alphabet | None = None) -> Perm:
    """The 3-cycle ``a -> b -> c -> a`` fixing every other symbol."""
    if len({a, b, c}) != 3:
        raise ValueError("a 3-cycle needs three distinct symbols")
    if alphabet is None:
        alphabet = Alphabet((a, b, c))
    return Perm.from_mapping(alphabet, {a: b, b: c, c: a})


# -- generator words ---------------------------------------------------------


@dataclass(frozen=True)
class Shift:
    """Partial shift of the first layer: ``(x, y) -> (shift(x, g), y)``."""

    g: Coord

    def __post_init__(self):
        object.__setattr__(self, "g", check_coord(self.g))


@dataclass(frozen=True)
class Ctrl:
    """Controlled map conditioned on the first-layer symbol at the origin."""

    sym: object
    perm: Perm


GenLetter = Union[Shift, Ctrl]


@dataclass(frozen=True)
class GenWord:
    letters: tuple[GenLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[GenLetter]:
        return iter(self.letters)

    def __getitem__(self, k):
        return self.letters[k]

    def __add__(self, other: GenWord) -> GenWord:
        return GenWord(self.letters + tuple(other.letters))

    def __mul__(self, n: int) -> GenWord:
        return GenWord(self.letters * n)

    def radius(self) -> int:
        """Total erosion of the naive evaluator: the sum of the letters' radii."""
        return sum(norm_inf(l.g) for l in self.letters if isinstance(l, Shift))


def invert_word(w: GenWord) -> GenWord:
    out = []
    for letter in reversed(w.letters):
        if isinstance(letter, Shift):
            out.append(Shift(neg(letter.g)))
        else:
            out.append(Ctrl(letter.sym, letter.perm.inverse()))
    return GenWord(tuple(out))


# -- conditional-permutation normal form ---------------------------------------


def _trim(window: tuple, rho: np.ndarray) -> tuple[tuple, np.ndarray]:
    keep = []
    for axis in range(len(window)):
        if not np.all(rho == np.take(rho, [0], axis=axis)):
            keep.append(axis)
    index = tuple(slice(None) if a in keep else 0 for a in range(len(window)))
    return tuple(window[a] for a in keep), np.ascontiguousarray(rho[index])


@dataclass(frozen=True, eq=False)
class CPNF:
    """``(x, y) -> (shift(x, shift), y')`` with ``y'_i = rho[x|_{i+window}](y_i)``.

    ``rho`` has one axis per window cell (indexed by first-layer symbol) and
    a last axis holding the permutation of the second-layer alphabet.
    """

    a_alphabet: Alphabet
    b_alphabet: Alphabet
    shift: Coord
    window: tuple[Coord, ...]
    rho: np.ndarray

    def __post_init__(self):
        window = tuple(sorted(check_coord(c, len(self.shift)) for c in self.window))
        rho = np.asarray(self.rho, dtype=np.int64)
        if rho.shape != (len(self.a_alphabet),) * len(window) + (len(self.b_alphabet),):
            raise ValueError(f"rho has shape {rho.shape}, inconsistent with the window")
        if len(window) > MAX_WINDOW:
            raise WindowCapError(f"window of {len(window)} cells exceeds the cap {MAX_WINDOW}")
        window, rho = _trim(window, rho)
        rho.setflags(write=False)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return len(self.shift)

    @classmethod
    def identity(cls, a_alphabet: Alphabet, b_alphabet: Alphabet, dim: int = 1) -> CPNF:
        return cls(a_alphabet, b_alphabet, zero(dim), (), np.arange(len(b_alphabet)))

    def perm_at(self, contents: Sequence) -> Perm:
        """Permutation applied when the window carries ``contents`` (window order)."""
        idx = tuple(self.a_alphabet.index(s) for s in contents)
        return Perm(self.b_alphabet, tuple(self.rho[idx]))

    def entries(self) -> Iterator[tuple[Pattern, Perm]]:
        """Every window pattern with its permutation."""
        syms = self.a_alphabet.symbols
        for idx in np.ndindex(self.rho.shape[:-1]):
            p = Pattern(tuple((c, syms[k]) for c, k in zip(self.window, idx)), self.dim)
            yield p, Perm(self.b_alphabet, tuple(self.rho[idx]))

    def is_trivial(self) -> bool:
        return not any(self.shift) and not self.window and Perm(self.b_alphabet, tuple(self.rho)).is_identity()

    def __repr__(self) -> str:
        return f"CPNF(shift={self.shift}, window={list(self.window)})"


def _expand(window: tuple, rho: np.ndarray, union: tuple, n_a: int) -> np.ndarray:
    cells = set(window)
    shape = [n_a if c in cells else 1 for c in union] + [rho.shape[-1]]
    return np.broadcast_to(rho.reshape(shape), (n_a,) * len(union) + (rho.shape[-1],))


def _check_alphabets(n1: CPNF, n2: CPNF) -> None:
    if n1.a_alphabet != n2.a_alphabet or n1.b_alphabet != n2.b_alphabet:
        raise AlphabetError("normal forms over different alphabets")
    if n1.dim != n2.dim:
        raise ValueError("dimension mismatch")


def cpnf_compose(n1: CPNF, n2: CPNF) -> CPNF:
    """Normal form of ``n1 o n2`` (``n2`` acts first)."""
    _check_alphabets(n1, n2)
    moved = tuple(add(c, n2.shift) for c in n1.window)
    union = tuple(sorted(set(moved) | set(n2.window)))
    if len(union) > MAX_WINDOW:
        raise WindowCapError(f"window of {len(union)} cells exceeds the cap {MAX_WINDOW}")
    n_a = len(n1.a_alphabet)
    outer = _expand(tuple(sorted(moved)), n1.rho, union, n_a)
    inner = _expand(n2.window, n2.rho, union, n_a)
    rho = np.take_along_axis(outer, inner, axis=-1)
    return CPNF(n1.a_alphabet, n1.b_alphabet, add(n1.shift, n2.shift), union, rho)


def cpnf_equal(n1: CPNF, n2: CPNF) -> bool:
    _check_alphabets(n1, n2)
    return n1.shift == n2.shift and n1.window == n2.window and bool(np.array_equal(n1.rho, n2.rho))


def cpnf_of_word(w: GenWord, a_alphabet: Alphabet, b_alphabet: Alphabet, dim: int = 1) -> CPNF:
    """Normal form of a generator word, folded letter by letter.

    Walking the word from its rightmost letter, the accumulated first-layer
    offset ``h`` records where a controlled letter reads the input: a
    ``Ctrl(a, p)`` met at offset ``h`` composes ``p`` onto every window
    pattern whose cell ``h`` carries ``a``.
    """
    h = zero(dim)
    events = []
    for letter in reversed(w.letters):
        if isinstance(letter, Shift):
            h = add(h, check_coord(letter.g, dim))
        else:
            events.append((h, a_alphabet.index(letter.sym), letter.perm.extend_to(b_alphabet).images))
    window = tuple(sorted({c for c, _, _ in events}))
    if len(window) > MAX_WINDOW:
        raise WindowCapError(f"window of {len(window)} cells exceeds the cap {MAX_WINDOW}")
    axis = {c: k for k, c in enumerate(window)}
    n_b = len(b_alphabet)
    rho = np.array(np.broadcast_to(np.arange(n_b), (len(a_alphabet),) * len(window) + (n_b,)))
    for c, s, images in events:
        view = rho[(slice(None),) * axis[c] + (s,)]
        view[...] = np.asarray(images)[view]
    return CPNF(a_alphabet, b_alphabet, h, window, rho)


def shift_cpnf(g: Coord, a_alphabet: Alphabet, b_alphabet: Alphabet) -> CPNF:
    return CPNF(a_alphabet, b_alphabet, check_coord(g), (), np.arange(len(b_alphabet)))


def controlled_cpnf(u: Pattern, alpha: Perm, a_alphabet: Alphabet, b_alphabet: Alphabet | None = None) -> CPNF:
    """Normal form written straight from the definition of the controlled map."""
    b_alphabet = alpha.alphabet if b_alphabet is None else b_alphabet
    alpha = alpha.extend_to(b_alphabet)
    rho = np.array(np.broadcast_to(np.arange(len(b_alphabet)), (len(a_alphabet),) * len(u) + (len(b_alphabet),)))
    rho[tuple(a_alphabet.index(s) for s in u.symbols)] = alpha.images
    return CPNF(a_alphabet, b_alphabet, zero(u.dim), u.coords, rho)


def nontrivial_entries(n: CPNF, letters: Iterable | None = None) -> list[tuple[Pattern, Perm]]:
    """Window patterns whose permutation moves some symbol of ``letters``."""
    return [(p, perm) for p, perm in n.entries() if not perm.is_identity(letters)]


def is_identity_on(n: CPNF, X, Y, budget: int | None = None) -> LangAnswer:
    """Is the normal form the identity on ``X x Y``?

    A nonzero first-layer shift is reported as not the identity (faithful on
    every subshift kind shipped here).  Otherwise the map is the identity iff
    every window pattern that permutes letters occurring in ``Y`` lies
    outside the language of ``X``.
    """
    if not isinstance(Y, (Full, SunnySideUp)):
        raise TypeError("Y must be a full shift or a sunny-side-up shift")
    if X.alphabet != n.a_alphabet or Y.alphabet != n.b_alphabet:
        raise AlphabetError("subshifts are not over the normal form's alphabets")
    if any(n.shift):
        return NO
    letters = single_cell_letters(Y, budget)
    unknown = None
    for p, _ in nontrivial_entries(n, letters):
        ans = language_contains(X, p, budget)
        if ans.yes:
            return NO
        if ans.unknown and unknown is None:
            unknown = ans
    return unknown if unknown is not None else YES


def cpnf_apply(n: CPNF, p: Pattern) -> Pattern:
    """Apply the normal form to a pattern over the product alphabet.

    The result lives on the cells ``i`` for which ``i``, ``i + shift`` and
    ``i + window`` all lie in the support of ``p``.
    """
    pm = p.mapping
    out = []
    for i in p.coords:
        src = add(i, n.shift)
        cells = [add(i, c) for c in n.window]
        if src not in pm or not all(c in pm for c in cells):
            continue
        perm = n.perm_at([pm[c][0] for c in cells])
        out.append((i, (pm[src][0], perm(pm[i][1]))))
    return Pattern(tuple(out), p.dim)


# -- block-map realizations -----------------------------------------------------


def _product_digits(a_alphabet: Alphabet, b_alphabet: Alphabet, radius: int, dim: int):
    n_b = len(b_alphabet)
    n_cells = _check_cap(len(a_alphabet) * n_b, radius, dim)
    digits = _digits(len(a_alphabet) * n_b, n_cells)
    pos = {c: k for k, c in enumerate(ball(radius, dim))}
    return digits // n_b, digits % n_b, pos


def controlled_map(u: Pattern, alpha: Perm, X, Y) -> BlockMap:
    """Block map of the controlled map on the product alphabet of ``X x Y``.

    At each cell the second-layer symbol is permuted by ``alpha`` exactly when
    the first layer matches ``u`` at the corresponding offsets.
    """
    a_alphabet, b_alphabet = X.alphabet, Y.alphabet
    alpha = alpha.extend_to(b_alphabet)
    for s in u.symbols:
        a_alphabet.index(s)
    radius = u.radius
    x, y, pos = _product_digits(a_alphabet, b_alphabet, radius, u.dim)
    match = np.ones(len(x), dtype=bool)
    for c, s in u.cells:
        match &= x[:, pos[c]] == a_alphabet.index(s)
    centre = pos[zero(u.dim)]
    y_out = np.where(match, np.asarray(alpha.images)[y[:, centre]], y[:, centre])
    table = x[:, centre] * len(b_alphabet) + y_out
    return BlockMap(a_alphabet.product(b_alphabet), a_alphabet.product(b_alphabet), u.dim, radius, table)


def partial_shift(g: Coord, a_alphabet: Alphabet, b_alphabet: Alphabet) -> BlockMap:
    """Block map of ``(x, y) -> (shift(x, g), y)``, of radius ``|g|_inf``."""
    g = check_coord(g)
    x, y, pos = _product_digits(a_alphabet, b_alphabet, norm_inf(g), len(g))
    table = x[:, pos[g]] * len(b_alphabet) + y[:, pos[zero(len(g))]]
    return BlockMap(a_alphabet.product(b_alphabet), a_alphabet.product(b_alphabet), len(g), norm_inf(g), table)


def letter_blockmap(letter: GenLetter, a_alphabet: Alphabet, b_alphabet: Alphabet, dim: int = 1) -> BlockMap:
    if isinstance(letter, Shift):
        return partial_shift(letter.g, a_alphabet, b_alphabet)
    u = Pattern(((zero(dim), letter.sym),), dim)
    return controlled_map(u, letter.perm, Full(a_alphabet, dim), Full(b_alphabet, dim))


def blockmap_to_cpnf(f: BlockMap, a_alphabet: Alphabet, b_alphabet: Alphabet) -> CPNF:
    """Read a block map on ``A x B`` back as a normal form.

    Raises ValueError when the map does not have the shape "translate the
    first layer, permute the second layer cellwise".
    """
    n_b = len(b_alphabet)
    if f.in_alphabet != a_alphabet.product(b_alphabet) or f.out_alphabet != f.in_alphabet:
        raise AlphabetError("block map is not over the product alphabet")
    x, y, pos = _product_digits(a_alphabet, b_alphabet, f.radius, f.dim)
    table = f.table.reshape(-1)
    out_x, out_y = table // n_b, table % n_b
    cells = ball(f.radius, f.dim)
    shift = next((c for c in cells if np.array_equal(out_x, x[:, pos[c]])), None)
    if shift is None:
        raise ValueError("first layer is not a translate of the input")
    n_a = len(a_alphabet)
    key = np.ravel_multi_index(tuple(x.T), (n_a,) * len(cells)) if cells else np.zeros(len(x), dtype=np.int64)
    y0 = y[:, pos[zero(f.dim)]]
    rho = np.full((n_a ** len(cells), n_b), -1, dtype=np.int64)
    rho[key, y0] = out_y
    if not np.array_equal(rho[key, y0], out_y):
        raise ValueError("second layer depends on more than the origin cell")
    return CPNF(a_alphabet, b_alphabet, shift, cells, rho.reshape((n_a,) * len(cells) + (n_b,)))


# -- naive evaluation ------------------------------------------------------------


def _letter_rule(letter: GenLetter, b_alphabet: Alphabet, dim: int):
    if isinstance(letter, Shift):
        radius = norm_inf(letter.g)
        cells = ball(radius, dim)
        src, centre = cells.index(letter.g), cells.index(zero(dim))
        return radius, lambda b: (b[src][0], b[centre][1])
    perm = letter.perm.extend_to(b_alphabet)
    sym = letter.sym

    def rule(b):
        x, y = b[0]
        return (x, perm(y)) if x == sym else (x, y)

    return 0, rule


def evaluate_word_naive(w: GenWord, p: Pattern, a_alphabet: Alphabet, b_alphabet: Alphabet) -> Pattern:
    """Apply the letters' local rules one after the other, rightmost first.

    Each unit shift erodes the support by one cell in every direction.
    """
    for _, (s, t) in p.cells:
        a_alphabet.index(s)
        b_alphabet.index(t)
    for letter in reversed(w.letters):
        radius, rule = _letter_rule(letter, b_alphabet, p.dim)
        p = apply_local(radius, p.dim, rule, p)
    return p


def crosscheck(w: GenWord, X, Y, budget: int | None = None, limit: int = 100_000) -> tuple[int, list]:
    """Compare :func:`evaluate_word_naive` with the normal form on ``X x Y``.

    The first layer runs over every admissible pattern on the cells the normal
    form reads (completed to an admissible pattern on the naive evaluator's
    support), the second layer over every symbol at the origin.  Returns the
    number of inputs checked and the list of disagreeing inputs.
    """
    dim = X.dim
    n = cpnf_of_word(w, X.alphabet, Y.alphabet, dim)
    support = ball(w.radius(), dim)
    read = sorted(set(n.window) | {n.shift})
    x_inputs = []
    for core in language_enumerate(X, read, budget):
        for ext in enumerate_extensions(core, support, X.alphabet):
            if language_contains(X, ext, budget).yes:
                x_inputs.append(ext)
                break
    filler = Y.alphabet.symbols[0]
    origin = zero(dim)
    checked, bad = 0, []
    for x in x_inputs:
        for b in Y.alphabet:
            y = Pattern(tuple((c, b if c == origin else filler) for c in support), dim)
            if not language_contains(Y, y, budget).yes:
                continue
            if checked >= limit:
                return checked, bad
            p = Pattern(tuple((c, (s, y[c])) for c, s in x.cells), dim)
            naive = evaluate_word_naive(w, p, X.alphabet, Y.alphabet)
            fast = cpnf_apply(n, p).restrict(naive.support)
            checked += 1
            if fast != naive:
                bad.append(p)
    return checked, bad
