"""Compiling controlled maps into words over a finite generator set.

The generators are the unit partial shifts and the controlled maps
``Ctrl(s, (a b c))`` that read a single first-layer cell at the origin and
apply a 3-cycle of the prime alphabet (at least five symbols) to the
second layer.

A controlled map ``C[u, abc]`` with ``|supp u| >= 2`` is rewritten as
``(Psi Phi)^2`` where, for a pivot cell ``g`` of ``u`` and ``v = u`` minus
``g``:

* ``Phi`` conjugates ``Ctrl(u_g, bad) Ctrl(u_g, ade)`` by the partial shift
  along ``g``; on cells where ``x_g = u_g`` it applies the involution
  ``(a b)(d e)``;
* ``Psi = C[v, cbd] C[v, bde]`` applies ``(b c)(d e)`` where ``v`` matches.

Both are involutions, and on cells matching all of ``u`` the product
``(b c)(d e) o (a b)(d e)`` is the 3-cycle ``a -> c -> b``, whose square is
``a -> b -> c``.  Elsewhere one of the two factors is trivial and the square
cancels.  Recursing on ``v`` yields a word in the generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .autgroup import Ctrl, GenWord, Shift, cpnf_of_word, is_identity_on, three_cycle
from .shifts import Alphabet, Full, LangAnswer, SunnySideUp
from .space import Coord, Pattern, neg, unit_vectors, zero

MIN_PRIME = 5


class PrimeAlphabetError(ValueError):
    pass


def largest_cell(u: Pattern) -> Coord:
    return max(u.coords)


def smallest_helpers(prime: tuple, cycle: tuple) -> tuple:
    rest = [s for s in prime if s not in cycle]
    return rest[0], rest[1]


@dataclass(frozen=True)
class CompileParams:
    """Prime alphabet, target cycle and the two deterministic choices.

    ``pivot_rule`` picks the cell removed at each step (default: the
    lexicographically largest); ``helper_rule`` picks the two auxiliary
    symbols ``d, e`` outside the current cycle (default: the first two in
    alphabet order).
    """

    prime: tuple = ("a", "b", "c", "d", "e")
    cycle: tuple | None = None
    pivot_rule: Callable[[Pattern], Coord] = field(default=largest_cell, compare=False)
    helper_rule: Callable[[tuple, tuple], tuple] = field(default=smallest_helpers, compare=False)

    def __post_init__(self):
        prime = tuple(self.prime)
        object.__setattr__(self, "prime", prime)
        if len(set(prime)) != len(prime):
            raise PrimeAlphabetError("repeated symbol in the prime alphabet")
        if len(prime) < MIN_PRIME:
            raise PrimeAlphabetError(
                f"the prime alphabet needs at least {MIN_PRIME} symbols, got {len(prime)}"
            )
        cycle = prime[:3] if self.cycle is None else tuple(self.cycle)
        if len(cycle) != 3 or len(set(cycle)) != 3 or not all(s in prime for s in cycle):
            raise PrimeAlphabetError(f"cycle {cycle} is not three distinct prime symbols")
        object.__setattr__(self, "cycle", cycle)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.prime)


def shift_letters(g: Coord) -> list[Shift]:
    """``g`` as unit partial shifts, x axis first."""
    out = []
    for k, e in enumerate(unit_vectors(len(g))):
        step = e if g[k] > 0 else neg(e)
        out.extend(Shift(step) for _ in range(abs(g[k])))
    return out


def conjugate(g: Coord, inner: Sequence) -> GenWord:
    """Letters for ``inner`` read at offset ``g`` instead of the origin."""
    return GenWord(tuple(shift_letters(neg(g)) + list(inner) + shift_letters(g)))


def _ctrl(sym, cycle: tuple, params: CompileParams) -> Ctrl:
    return Ctrl(sym, three_cycle(*cycle, alphabet=params.alphabet))


@dataclass(frozen=True)
class DecompStep:
    pivot: Coord
    residual: Pattern
    phi: GenWord
    psi_cycles: tuple[tuple, tuple]
    helpers: tuple


def decompose_step(u: Pattern, params: CompileParams, cycle: tuple | None = None) -> DecompStep:
    """One rewriting step for ``C[u, cycle]``.

    Returns the pivot, the residual pattern ``v``, the full letter sequence of
    ``Phi`` and the two cycles ``Psi`` needs on ``v``, in word order.
    """
    if len(u) < 2:
        raise ValueError("decomposition needs a pattern with at least two cells")
    a, b, c = params.cycle if cycle is None else cycle
    d, e = params.helper_rule(params.prime, (a, b, c))
    g = params.pivot_rule(u)
    v = u.restrict(x for x in u.coords if x != g)
    phi = conjugate(g, [_ctrl(u[g], (b, a, d), params), _ctrl(u[g], (a, d, e), params)])
    return DecompStep(g, v, phi, ((c, b, d), (b, d, e)), (d, e))


def compile(u: Pattern, params: CompileParams | None = None, trace: list | None = None) -> GenWord:
    """Word over the generators equal to the controlled map ``C[u, params.cycle]``."""
    params = CompileParams() if params is None else params
    if not u.cells:
        raise ValueError("cannot compile the empty pattern")
    return _compile(u, params.cycle, params, trace, 0)


def _compile(u: Pattern, cycle: tuple, params: CompileParams, trace, depth: int) -> GenWord:
    if len(u) == 1:
        (g, s), = u.cells
        return conjugate(g, [_ctrl(s, cycle, params)])
    step = decompose_step(u, params, cycle)
    if trace is not None:
        trace.append(
            f"{'  ' * depth}step pivot={step.pivot} residual={len(step.residual)} cells "
            f"cycle={''.join(map(str, cycle))} "
            f"phi={''.join(map(str, (cycle[1], cycle[0], step.helpers[0])))},"
            f"{''.join(map(str, (cycle[0],) + step.helpers))} "
            f"psi={','.join(''.join(map(str, cy)) for cy in step.psi_cycles)}"
        )
    psi = GenWord()
    for cy in step.psi_cycles:
        psi = psi + _compile(step.residual, cy, params, trace, depth + 1)
    return (psi + step.phi) * 2


def reduction_map(u: Pattern, params: CompileParams | None = None) -> GenWord:
    """The word that is the identity on ``X x Y`` exactly when ``u`` is not in ``L(X)``."""
    return compile(u, params)


def word_is_identity(w: GenWord, X, Y, budget: int | None = None) -> LangAnswer:
    if not isinstance(Y, (Full, SunnySideUp)):
        raise TypeError("Y must be a full shift or a sunny-side-up shift")
    return is_identity_on(cpnf_of_word(w, X.alphabet, Y.alphabet, X.dim), X, Y, budget)


def expected_length(n_cells: int) -> int:
    """Compiled length for a contiguous row ``{0, ..., n-1}`` with the default pivot."""
    if n_cells == 1:
        return 1
    # pivot n-1 costs 2(n-1) shift letters plus two Ctrl letters
    return 2 * (2 * (n_cells - 1) + 2 + 2 * expected_length(n_cells - 1))
