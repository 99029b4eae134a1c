"""Subshift descriptions and their language oracles.

Four kinds of subshift are supported: full shifts, SFTs given by a finite
list of forbidden patterns, sunny-side-up shifts and products of these.

Membership of a pattern in the language is decided exactly for full shifts,
sunny-side-up shifts, 1D SFTs and products of those.  For 2D SFTs the
colanguage is only semi-decidable, so :func:`language_contains` may answer
``Unknown`` once its window budget is spent.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .space import (
    Coord,
    Pattern,
    Window,
    add,
    all_patterns,
    bounding_box,
    check_coord,
    dilate,
    enumerate_extensions,
    occurs_in,
    sub,
)

DEFAULT_BUDGET = 8
MAX_PERIOD = 4


def default_budget() -> int:
    return int(os.environ.get("AUTOSHIFT_BUDGET", DEFAULT_BUDGET))


class AlphabetError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if not symbols:
            raise AlphabetError("an alphabet needs at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"repeated symbol in alphabet {symbols}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: k for k, s in enumerate(symbols)})

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, s) -> bool:
        return s in self._index

    def index(self, s) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise AlphabetError(f"symbol {s!r} not in alphabet {self.symbols}") from None

    def product(self, other: Alphabet) -> Alphabet:
        """Cartesian product, ordered so that pair index = i * len(other) + j."""
        return Alphabet(tuple(itertools.product(self.symbols, other.symbols)))

    def __repr__(self) -> str:
        return f"Alphabet({list(self.symbols)})"


@dataclass(frozen=True)
class Full:
    alphabet: Alphabet
    dim: int = 1


@dataclass(frozen=True)
class SFT:
    alphabet: Alphabet
    forbidden: tuple[Pattern, ...]
    dim: int = 1

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        for f in self.forbidden:
            if not f.cells:
                raise ValueError("forbidden patterns must be nonempty")
            if f.dim != self.dim:
                raise ValueError("forbidden pattern has the wrong dimension")
            _check_symbols(self.alphabet, f)


@dataclass(frozen=True)
class SunnySideUp:
    """At most one cell carries a symbol of ``prime``; every other cell is ``bottom``."""

    prime: tuple
    bottom: object
    dim: int = 1

    def __post_init__(self):
        object.__setattr__(self, "prime", tuple(self.prime))
        if self.bottom in self.prime:
            raise AlphabetError("the bottom symbol must not belong to the prime alphabet")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet((self.bottom,) + self.prime)


@dataclass(frozen=True)
class Product:
    left: "SubshiftSpec"
    right: "SubshiftSpec"

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise ValueError("product components must share a dimension")

    @property
    def dim(self) -> int:
        return self.left.dim

    @property
    def alphabet(self) -> Alphabet:
        return self.left.alphabet.product(self.right.alphabet)


SubshiftSpec = Union[Full, SFT, SunnySideUp, Product]


def sft_from_words(alphabet: Sequence, words: Iterable[Sequence]) -> SFT:
    """1D SFT forbidding the given contiguous words."""
    return SFT(Alphabet(tuple(alphabet)), tuple(Pattern.word(w) for w in words), 1)


def golden_mean() -> SFT:
    return sft_from_words("01", ["11"])


def checkerboard() -> SFT:
    forbidden = []
    for s in "01":
        for step in ((1, 0), (0, 1)):
            forbidden.append(Pattern((((0, 0), s), (step, s)), 2))
    return SFT(Alphabet(("0", "1")), tuple(forbidden), 2)


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class LangAnswer:
    """Answer of a language query; ``window`` is the schedule index involved, if any."""

    verdict: Verdict
    window: int | None = None

    @property
    def yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def no(self) -> bool:
        return self.verdict is Verdict.NO

    @property
    def unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN

    def __str__(self) -> str:
        if self.window is None:
            return self.verdict.value
        if self.unknown:
            return f"Unknown (budget exhausted at window {self.window})"
        return f"{self.verdict.value} (window {self.window})"


YES = LangAnswer(Verdict.YES)
NO = LangAnswer(Verdict.NO)


def _check_symbols(alphabet: Alphabet, w: Pattern) -> None:
    for _, s in w.cells:
        if s not in alphabet:
            raise AlphabetError(f"symbol {s!r} not in alphabet {alphabet.symbols}")


def _check_dim(spec, w: Pattern) -> None:
    if w.cells and w.dim != spec.dim:
        raise ValueError(f"pattern is {w.dim}-dimensional, subshift is {spec.dim}-dimensional")


# -- local admissibility -------------------------------------------------------


def locally_admissible(spec: SubshiftSpec, w: Pattern) -> bool:
    """True iff no forbidden pattern of ``spec`` occurs in ``w``."""
    _check_symbols(spec.alphabet, w)
    _check_dim(spec, w)
    return _locally_admissible(spec, w)


def _locally_admissible(spec, w: Pattern) -> bool:
    if isinstance(spec, Full):
        return True
    if isinstance(spec, SunnySideUp):
        return sum(s != spec.bottom for s in w.symbols) <= 1
    if isinstance(spec, Product):
        return _locally_admissible(spec.left, w.project(0)) and _locally_admissible(spec.right, w.project(1))
    if isinstance(spec, SFT):
        return not any(occurs_in(f, w) for f in spec.forbidden)
    raise TypeError(f"unsupported subshift {spec!r}")


# -- constraint search ---------------------------------------------------------


def _no_match_search(free: Sequence, domain: Sequence, clauses: Iterable[tuple]) -> bool:
    """Backtracking search for an assignment of ``free`` avoiding every clause.

    A clause is a tuple of ``(variable, value)`` pairs that must not all hold
    at once.  Each clause is checked as soon as its last variable is set.
    Returns True iff such an assignment exists.
    """
    order = {v: k for k, v in enumerate(free)}
    by_last: list[list[tuple]] = [[] for _ in free]
    for clause in clauses:
        if not clause:
            return False
        by_last[max(order[v] for v, _ in clause)].append(clause)
    value: dict = {}
    choice = [-1] * len(free)
    k = 0
    while 0 <= k < len(free):
        choice[k] += 1
        if choice[k] == len(domain):
            choice[k] = -1
            k -= 1
            continue
        value[free[k]] = domain[choice[k]]
        if not any(all(value[v] == t for v, t in clause) for clause in by_last[k]):
            k += 1
    return k == len(free)


def _placements(forbidden: Pattern, window: Window) -> Iterator[list[tuple[Coord, object]]]:
    anchor = forbidden.coords[0]
    for c in window:
        t = sub(c, anchor)
        cells = [(add(f, t), s) for f, s in forbidden.cells]
        if all(p in window for p, _ in cells):
            yield cells


def _sft_extension_exists(spec: SFT, w: Pattern, window: Window) -> bool:
    fixed = w.mapping
    clauses = []
    for f in spec.forbidden:
        for cells in _placements(f, window):
            if any(p in fixed and fixed[p] != s for p, s in cells):
                continue
            clauses.append(tuple((p, s) for p, s in cells if p not in fixed))
    free = sorted(window - w.support)
    return _no_match_search(free, spec.alphabet.symbols, clauses)


def _extension_exists(spec, w: Pattern, window: Window) -> bool:
    """Is there a locally admissible pattern on ``window`` extending ``w``?"""
    if isinstance(spec, Full):
        return True
    if isinstance(spec, SunnySideUp):
        return _locally_admissible(spec, w)
    if isinstance(spec, Product):
        # local admissibility of a product is componentwise, so is the search
        return _extension_exists(spec.left, w.project(0), window) and _extension_exists(
            spec.right, w.project(1), window
        )
    if isinstance(spec, SFT):
        return _sft_extension_exists(spec, w, window)
    raise TypeError(f"unsupported subshift {spec!r}")


# -- colanguage semi-decision ---------------------------------------------------


def default_schedule(w: Pattern, length: int) -> list[Window]:
    """Windows ``V_i``: the bounding box of ``supp w`` thickened by ``i`` cells."""
    box = bounding_box(w.coords, w.dim)
    return [dilate(box, i, w.dim) for i in range(length)]


def colang_semidecide(
    spec: SubshiftSpec,
    w: Pattern,
    schedule: Sequence[Iterable[Coord]] | None = None,
    budget: int | None = None,
    method: str = "search",
) -> int | None:
    """First schedule index at which every extension of ``w`` is locally inadmissible.

    Finding such an index certifies that ``w`` is outside the language.
    ``None`` means the schedule ran out first.  ``method="enumerate"`` lists
    the extensions one by one; the default backtracking search answers the
    same question without materializing them.
    """
    _check_symbols(spec.alphabet, w)
    _check_dim(spec, w)
    if schedule is None:
        schedule = default_schedule(w, default_budget() if budget is None else budget)
    windows = [frozenset(check_coord(c, w.dim) for c in v) for v in schedule]
    if windows and not w.support <= windows[0]:
        raise ValueError("first window must contain the pattern's support")
    for a, b in zip(windows, windows[1:]):
        if not a <= b:
            raise ValueError("schedule must be increasing")
    for i, window in enumerate(windows):
        if method == "enumerate":
            flagged = not any(
                _locally_admissible(spec, e) for e in enumerate_extensions(w, window, spec.alphabet)
            )
        elif method == "search":
            flagged = not _extension_exists(spec, w, window)
        else:
            raise ValueError(f"unknown method {method!r}")
        if flagged:
            return i
    return None


# -- exact 1D SFT decision ----------------------------------------------------


@lru_cache(maxsize=None)
def _sft1d_graph(spec: SFT):
    """Essential part of the transition graph on admissible (m-1)-blocks.

    Returns ``(m, vertices, successors)`` with vertices as tuples of symbols.
    """
    words = set()
    for f in spec.forbidden:
        xs = [c[0] for c in f.coords]
        lo, hi = min(xs), max(xs)
        slots = [[f[(x,)]] if (x,) in f else list(spec.alphabet) for x in range(lo, hi + 1)]
        words.update(itertools.product(*slots))
    m = max(2, max((len(wd) for wd in words), default=1))

    def admissible(word: tuple) -> bool:
        return not any(
            word[k : k + len(f)] == f for f in words for k in range(len(word) - len(f) + 1)
        )

    vertices = {v for v in itertools.product(spec.alphabet.symbols, repeat=m - 1) if admissible(v)}
    succ = {v: set() for v in vertices}
    pred = {v: set() for v in vertices}
    for v in vertices:
        for s in spec.alphabet:
            if admissible(v + (s,)):
                t = v[1:] + (s,)
                if t in vertices:
                    succ[v].add(t)
                    pred[t].add(v)
    # strip vertices that cannot lie on a bi-infinite path
    changed = True
    while changed:
        changed = False
        for v in list(vertices):
            if not (succ[v] & vertices) or not (pred[v] & vertices):
                vertices.discard(v)
                changed = True
    succ = {v: frozenset(succ[v] & vertices) for v in vertices}
    return m, frozenset(vertices), succ


def _sft1d_contains(spec: SFT, w: Pattern) -> bool:
    m, vertices, succ = _sft1d_graph(spec)
    xs = [c[0] for c in w.coords]
    lo, hi = min(xs), max(xs)
    hi = max(hi, lo + m - 2)
    wm = {c[0]: s for c, s in w.cells}

    def fits(block: tuple, start: int) -> bool:
        return all(wm.get(start + k, s) == s for k, s in enumerate(block))

    states = {v for v in vertices if fits(v, lo)}
    for x in range(lo + m - 1, hi + 1):
        if not states:
            break
        states = {t for v in states for t in succ[v] if wm.get(x, t[-1]) == t[-1]}
    return bool(states)


# -- 2D periodic certification ----------------------------------------------------


def _periodic_extension_exists(spec: SFT, w: Pattern, periods: tuple[int, int]) -> bool:
    p, q = periods

    def wrap(c: Coord) -> Coord:
        return (c[0] % p, c[1] % q)

    fixed: dict = {}
    for c, s in w.cells:
        if fixed.setdefault(wrap(c), s) != s:
            return False
    torus = list(itertools.product(range(p), range(q)))
    clauses = []
    for f in spec.forbidden:
        for t in torus:
            cells: dict = {}
            consistent = True
            for c, s in f.cells:
                key = wrap(add(c, t))
                if cells.setdefault(key, s) != s:
                    consistent = False
                    break
            if not consistent:
                continue
            if any(k in fixed and fixed[k] != s for k, s in cells.items()):
                continue
            clauses.append(tuple((k, s) for k, s in cells.items() if k not in fixed))
    free = [c for c in torus if c not in fixed]
    return _no_match_search(free, spec.alphabet.symbols, clauses)


def periodic_certificate(spec: SFT, w: Pattern, max_period: int = MAX_PERIOD) -> tuple[int, int] | None:
    """Smallest-area periods ``(p, q)`` of an admissible periodic extension of ``w``."""
    periods = sorted(
        itertools.product(range(1, max_period + 1), repeat=2), key=lambda pq: (pq[0] * pq[1], pq)
    )
    for pq in periods:
        if _periodic_extension_exists(spec, w, pq):
            return pq
    return None


# -- language queries -----------------------------------------------------------


def language_contains(spec: SubshiftSpec, w: Pattern, budget: int | None = None) -> LangAnswer:
    """Does ``w`` extend to a configuration of ``spec``?"""
    _check_symbols(spec.alphabet, w)
    _check_dim(spec, w)
    return _contains(spec, w, default_budget() if budget is None else budget)


def _contains(spec, w: Pattern, budget: int) -> LangAnswer:
    if not w.cells or isinstance(spec, Full):
        return YES
    if isinstance(spec, SunnySideUp):
        return YES if _locally_admissible(spec, w) else NO
    if isinstance(spec, Product):
        left = _contains(spec.left, w.project(0), budget)
        right = _contains(spec.right, w.project(1), budget)
        if left.no:
            return left
        if right.no:
            return right
        if left.yes and right.yes:
            return YES
        return left if left.unknown else right
    if isinstance(spec, SFT):
        if spec.dim == 1:
            return YES if _sft1d_contains(spec, w) else NO
        flagged = colang_semidecide(spec, w, budget=budget)
        if flagged is not None:
            return LangAnswer(Verdict.NO, flagged)
        if periodic_certificate(spec, w) is not None:
            return YES
        return LangAnswer(Verdict.UNKNOWN, budget - 1)
    raise TypeError(f"unsupported subshift {spec!r}")


def language_enumerate(spec: SubshiftSpec, window: Iterable[Coord], budget: int | None = None) -> list[Pattern]:
    """All patterns on ``window`` belonging to the language of ``spec``.

    Raises :class:`BudgetExhausted` if some candidate cannot be decided.
    """
    out = []
    for p in all_patterns(window, spec.alphabet, spec.dim):
        ans = language_contains(spec, p, budget)
        if ans.unknown:
            raise BudgetExhausted(f"could not decide {p} within the budget")
        if ans.yes:
            out.append(p)
    return out


def is_alpha_permutable(spec: SubshiftSpec, alpha) -> bool:
    """Is ``spec`` closed under applying ``alpha`` to a single cell?

    Only full shifts and sunny-side-up shifts are recognised; every other
    kind is reported as not permutable.
    """
    if tuple(alpha.alphabet) != tuple(spec.alphabet):
        raise AlphabetError("permutation is not over the subshift's alphabet")
    if isinstance(spec, Full):
        return True
    if isinstance(spec, SunnySideUp):
        return alpha(spec.bottom) == spec.bottom
    return False


def single_cell_letters(spec: SubshiftSpec, budget: int | None = None) -> frozenset:
    """Symbols that actually appear in some configuration."""
    origin = (0,) * spec.dim
    return frozenset(p[origin] for p in language_enumerate(spec, [origin], budget))
