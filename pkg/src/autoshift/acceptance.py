"""Exhaustive verification sweeps, one function per acceptance criterion.

Each criterion returns a :class:`Result`; a criterion passes when its check
holds exactly and it finished within its time limit.  ``run_all`` is what
``autoshift verify`` prints.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from .autgroup import (
    CPNF,
    Ctrl,
    GenWord,
    Perm,
    Shift,
    blockmap_to_cpnf,
    controlled_cpnf,
    controlled_map,
    cpnf_compose,
    cpnf_equal,
    cpnf_of_word,
    crosscheck,
    is_identity_on,
    shift_cpnf,
    three_cycle,
)
from .blockmap import BlockMap, apply_to_pattern, compose, enumerate_blockmaps, equal_on, equal_syntactic
from .formats import dumps, word_to_json
from .reduction import CompileParams, compile, expected_length, reduction_map, word_is_identity
from .shifts import (
    Alphabet,
    Full,
    Product,
    SunnySideUp,
    checkerboard,
    colang_semidecide,
    golden_mean,
    language_contains,
    language_enumerate,
)
from .space import Pattern, ball, neg, shift_pattern

BINARY = Alphabet(("0", "1"))
PRIME = Alphabet(("a", "b", "c", "d", "e"))


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.number}] {self.name}: {self.detail} ({self.seconds:.2f}s, limit {self.limit:g}s)"


def patterns_within(cells, alphabet=BINARY, dim: int = 1):
    """Every nonempty pattern whose support is a subset of ``cells``."""
    cells = sorted(cells)
    for k in range(1, len(cells) + 1):
        for support in itertools.combinations(cells, k):
            for syms in itertools.product(alphabet.symbols, repeat=k):
                yield Pattern(tuple(zip(support, syms)), dim)


def words_up_to(n: int, alphabet=BINARY):
    for k in range(1, n + 1):
        for syms in itertools.product(alphabet.symbols, repeat=k):
            yield Pattern.word(syms)


def sunny_binary() -> SunnySideUp:
    """Sunny-side-up shift on {0, 1}: at most one 1."""
    return SunnySideUp(("1",), "0")


def _timed(number: int, name: str, limit: float, check: Callable[[], tuple[bool, str]]) -> Result:
    start = time.perf_counter()
    try:
        ok, detail = check()
    except Exception as exc:  # a crash is a failed criterion, reported as such
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if ok and seconds > limit:
        ok, detail = False, detail + " but exceeded the time limit"
    return Result(number, name, ok, detail, seconds, limit)


# -- 1 -------------------------------------------------------------------------


def decomposition_exactness() -> tuple[bool, str]:
    cycles = list(itertools.permutations(PRIME.symbols, 3))
    cases = [(u, BINARY) for u in patterns_within([(0,), (1,), (2,)])]
    cases += [(u, BINARY) for u in patterns_within(list(itertools.product((0, 1), repeat=2)), dim=2)]
    checked = 0
    for u, a_alphabet in cases:
        for cycle in cycles:
            w = compile(u, CompileParams(cycle=cycle))
            direct = controlled_cpnf(u, three_cycle(*cycle, alphabet=PRIME), a_alphabet, PRIME)
            if not cpnf_equal(cpnf_of_word(w, a_alphabet, PRIME, u.dim), direct):
                return False, f"mismatch for u={u}, cycle={cycle}"
            checked += 1
    return True, f"{checked} (pattern, cycle) pairs equal ({len(cases)} patterns x {len(cycles)} cycles)"


# -- 2 -------------------------------------------------------------------------


def proof_identity() -> tuple[bool, str]:
    phi = Perm.from_mapping(PRIME, {"a": "b", "b": "a", "d": "e", "e": "d"})
    psi = Perm.from_mapping(PRIME, {"b": "c", "c": "b", "d": "e", "e": "d"})
    acb = three_cycle("a", "c", "b", PRIME)
    abc = three_cycle("a", "b", "c", PRIME)
    ok = psi * phi == acb and (psi * phi) ** 2 == abc and phi * phi == psi * psi == Perm.identity(PRIME)
    return ok, f"psi o phi = {psi * phi}, squared = {(psi * phi) ** 2}"


# -- 3 -------------------------------------------------------------------------


def reduction_correctness() -> tuple[bool, str]:
    Y = Full(PRIME)
    total = 0
    for X in (golden_mean(), sunny_binary()):
        for u in words_up_to(6):
            verdict = word_is_identity(reduction_map(u), X, Y)
            member = language_contains(X, u)
            if verdict.unknown or member.unknown or verdict.yes != member.no:
                return False, f"{X.__class__.__name__}: u={u} word verdict {verdict}, language {member}"
            total += 1
    return True, f"{total} patterns, identity <=> outside the language"


# -- 4 -------------------------------------------------------------------------


def one_one() -> tuple[bool, str]:
    seen: dict[str, Pattern] = {}
    for u in patterns_within([(0,), (1,), (2,)]):
        key = dumps(word_to_json(reduction_map(u)))
        if key in seen:
            return False, f"{u} and {seen[key]} compile to the same word"
        seen[key] = u
    return True, f"{len(seen)} patterns, {len(seen)} distinct words"


# -- 5 -------------------------------------------------------------------------


def small_controls():
    return list(patterns_within([(-1,), (0,), (1,)]))


def _short(u):
    return [p for p in u if len(p) <= 2]


def controlled_map_properties() -> tuple[bool, str]:
    us = _short(small_controls())
    X, Y = Full(BINARY), Full(PRIME)
    abc = three_cycle("a", "b", "c", PRIME)
    # the first layer is never altered
    for u in us:
        f = controlled_map(u, abc, X, Y)
        centre = len(f.cells) // 2
        out_x = f.table.reshape(-1) // len(PRIME)
        in_x = (BlockMap.identity(f.in_alphabet, 1, f.radius).table.reshape(-1)) // len(PRIME)
        if not (out_x == in_x).all():
            return False, f"first layer altered for u={u}"
        if not cpnf_equal(blockmap_to_cpnf(f, BINARY, PRIME), controlled_cpnf(u, abc, BINARY, PRIME)):
            return False, f"block map and normal form disagree for u={u}"
    # shifts conjugate controlled maps into translated ones
    for u in us:
        direct = controlled_cpnf(u, abc, BINARY, PRIME)
        for g in [(1,), (-1,)]:
            moved = controlled_cpnf(shift_pattern(u, g), abc, BINARY, PRIME)
            conj = cpnf_compose(shift_cpnf(g, BINARY, PRIME), cpnf_compose(moved, shift_cpnf(neg(g), BINARY, PRIME)))
            if not cpnf_equal(direct, conj):
                return False, f"shift conjugation fails for u={u}, g={g}"
    # C[u, alpha] o C[u, alpha^-1] is the identity
    perms = [abc, Perm.from_mapping(PRIME, {"a": "b", "b": "a"}), Perm(PRIME, (1, 2, 3, 4, 0))]
    for u in us:
        for alpha in perms:
            f = compose(controlled_map(u, alpha, X, Y), controlled_map(u, alpha.inverse(), X, Y))
            if not equal_syntactic(f, BlockMap.identity(f.in_alphabet)):
                return False, f"inverse composition fails for u={u}, alpha={alpha}"
    # identity iff u outside the language or alpha trivial
    checks = 0
    for Xs in (golden_mean(), X):
        for u in us:
            outside = language_contains(Xs, u).no
            for alpha in (abc, Perm.identity(PRIME)):
                expected = outside or alpha.is_identity()
                by_cpnf = is_identity_on(controlled_cpnf(u, alpha, BINARY, PRIME), Xs, Y)
                by_blocks = equal_on(controlled_map(u, alpha, Xs, Y), BlockMap.identity(Xs.alphabet.product(PRIME)), Product(Xs, Y))
                if by_cpnf.yes != expected or by_blocks.yes != expected:
                    return False, f"identity criterion fails for X={Xs.__class__.__name__}, u={u}, alpha={alpha}"
                checks += 1
    return True, f"first layer, conjugation, inverses and identity criterion hold for {len(us)} patterns ({checks} identity checks)"


# -- 6 -------------------------------------------------------------------------


def _oracle_equal(f: BlockMap, g: BlockMap, language: list[Pattern]) -> bool:
    for p in language:
        a, b = apply_to_pattern(f, p), apply_to_pattern(g, p)
        common = a.support & b.support
        if a.restrict(common) != b.restrict(common):
            return False
    return True


def blockmap_pairs(seed: int = 0, sample: int = 200):
    maps = list(enumerate_blockmaps(BINARY, BINARY, 1))
    rng = random.Random(seed)
    pairs = [(rng.choice(maps), rng.choice(maps)) for _ in range(sample)]
    for f in maps:
        flat = f.table.reshape(-1)
        for k in range(len(flat)):
            t = flat.copy()
            t[k] = 1 - t[k]
            pairs.append((f, BlockMap(BINARY, BINARY, 1, f.radius, t)))
    return pairs


def equality_decision() -> tuple[bool, str]:
    X = golden_mean()
    language = language_enumerate(X, ball(2, 1))
    pairs = blockmap_pairs()
    equal = 0
    for f, g in pairs:
        ans = equal_on(f, g, X)
        if ans.unknown or ans.yes != _oracle_equal(f, g, language):
            return False, f"disagreement with the oracle on {f.table.reshape(-1)} / {g.table.reshape(-1)}"
        equal += ans.yes
    return True, f"{len(pairs)} pairs agree with the oracle ({equal} equal on X)"


# -- 7 -------------------------------------------------------------------------


def colanguage() -> tuple[bool, str]:
    cb = checkerboard()
    diag = Pattern((((0, 0), "0"), ((1, 1), "1")), 2)
    square = set(itertools.product((0, 1), repeat=2))
    schedule = [square | set(itertools.product(range(-i, 2 + i), repeat=2)) for i in range(3)]
    if colang_semidecide(cb, diag, schedule) != 0:
        return False, "checkerboard diagonal mismatch not flagged at window 0"
    gm = golden_mean()
    if colang_semidecide(gm, Pattern.word("11"), budget=8) != 0:
        return False, "'11' not flagged at window 0"
    admissible = [u for u in words_up_to(6) if language_contains(gm, u).yes]
    for u in admissible:
        if colang_semidecide(gm, u, budget=8) is not None:
            return False, f"admissible {u} was flagged"
    return True, f"both flagged at window 0; {len(admissible)} admissible words never flagged"


# -- 8 -------------------------------------------------------------------------


def random_word(rng: random.Random, max_len: int = 12) -> GenWord:
    letters = []
    cycles = list(itertools.permutations(PRIME.symbols, 3))
    for _ in range(rng.randint(0, max_len)):
        if rng.random() < 0.5:
            letters.append(Shift((rng.choice((1, -1)),)))
        else:
            letters.append(Ctrl(rng.choice(BINARY.symbols), three_cycle(*rng.choice(cycles), alphabet=PRIME)))
    return GenWord(tuple(letters))


def random_words(count: int = 500, seed: int = 0, max_window: int = 3) -> list[GenWord]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        w = random_word(rng)
        if len(cpnf_of_word(w, BINARY, PRIME).window) <= max_window:
            out.append(w)
    return out


def evaluator_crosscheck() -> tuple[bool, str]:
    X, Y = golden_mean(), Full(PRIME)
    total = 0
    for w in random_words():
        checked, bad = crosscheck(w, X, Y)
        if bad or not checked:
            return False, f"evaluators disagree on {len(bad)} inputs for a word of length {len(w)}"
        total += checked
    return True, f"500 words, {total} inputs, no disagreement"


# -- 9 -------------------------------------------------------------------------


def word_lengths() -> tuple[bool, str]:
    lengths = []
    for n in (1, 2, 3):
        found = {len(compile(Pattern.word(s))) for s in itertools.product("01", repeat=n)}
        if found != {expected_length(n)}:
            return False, f"{n}-cell patterns compile to lengths {sorted(found)}"
        lengths.append(expected_length(n))
    ok = lengths == [1, 12, 60]
    return ok, f"lengths {lengths}"


CRITERIA = [
    (1, "Decomposition exactness", 10.0, decomposition_exactness),
    (2, "Proof identity", 0.001, proof_identity),
    (3, "Reduction correctness", 60.0, reduction_correctness),
    (4, "One-one-ness", 5.0, one_one),
    (5, "Controlled-map properties", 30.0, controlled_map_properties),
    (6, "Equality decision", 60.0, equality_decision),
    (7, "Colanguage semi-decision", 5.0, colanguage),
    (8, "Evaluator cross-check", 120.0, evaluator_crosscheck),
    (9, "Word-length recurrence", 1.0, word_lengths),
]


def run(number: int) -> Result:
    for n, name, limit, check in CRITERIA:
        if n == number:
            return _timed(n, name, limit, check)
    raise KeyError(number)


def run_all() -> list[Result]:
    return [_timed(n, name, limit, check) for n, name, limit, check in CRITERIA]
