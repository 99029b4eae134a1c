import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autoshift.blockmap import (
    MAX_BALL_CELLS,
    BlockMap,
    RadiusCapError,
    apply_to_pattern,
    compose,
    disagreements,
    enumerate_blockmaps,
    equal_on,
    equal_syntactic,
    raise_radius,
)
from autoshift.shifts import Alphabet, AlphabetError, Full, checkerboard, golden_mean, language_enumerate
from autoshift.space import Pattern, ball, shift_pattern

from conftest import BINARY


def xor():
    return BlockMap.from_rule(BINARY, BINARY, 1, 1, lambda b: str((int(b[0]) + int(b[2])) % 2))


def shift_left():
    # output at i reads cell i + 1
    return BlockMap.from_rule(BINARY, BINARY, 1, 1, lambda b: b[2])


def shift_right():
    return BlockMap.from_rule(BINARY, BINARY, 1, 1, lambda b: b[0])


def random_map(rng, radius, alphabet=BINARY, dim=1):
    size = len(alphabet) ** len(ball(radius, dim))
    return BlockMap(alphabet, alphabet, dim, radius, np.array([rng.randrange(len(alphabet)) for _ in range(size)]))


maps_r1 = st.integers(0, 2**8 - 1).map(
    lambda n: BlockMap(BINARY, BINARY, 1, 1, np.array([(n >> k) & 1 for k in range(8)]))
)
binary_words = st.text("01", min_size=5, max_size=9).map(Pattern.word)


def test_apply_examples():
    w = Pattern.word("0110")
    assert apply_to_pattern(BlockMap.identity(BINARY), w) == w
    # cell 1 sees (0, 1), cell 2 sees (1, 0)
    assert apply_to_pattern(xor(), w) == Pattern.word("11", start=1)
    ab = Alphabet(("a", "b"))
    assert apply_to_pattern(BlockMap.constant(BINARY, ab, "a"), Pattern.word("01")) == Pattern.word("aa")


def test_apply_needs_room():
    with pytest.raises(ValueError):
        apply_to_pattern(xor(), Pattern.word("01"))


def test_compose_examples():
    f = xor()
    assert equal_syntactic(compose(BlockMap.identity(BINARY), f), raise_radius(f, 1))
    assert equal_syntactic(compose(shift_left(), shift_right()), BlockMap.identity(BINARY))
    ff = compose(f, f)
    for s in itertools.product("01", repeat=5):
        w = Pattern.word(s)
        assert apply_to_pattern(ff, w) == apply_to_pattern(f, apply_to_pattern(f, w))


def test_compose_alphabet_mismatch():
    ab = Alphabet(("a", "b"))
    with pytest.raises(AlphabetError):
        compose(xor(), BlockMap.constant(BINARY, ab, "a"))


def test_radius_cap():
    assert len(ball(5, 1)) <= MAX_BALL_CELLS
    with pytest.raises(RadiusCapError):
        BlockMap.identity(BINARY, 1, 6)
    with pytest.raises(RadiusCapError):
        BlockMap.identity(BINARY, 2, 2)
    with pytest.raises(RadiusCapError):
        compose(BlockMap.identity(BINARY, 1, 3), BlockMap.identity(BINARY, 1, 3))


def test_raise_radius_examples():
    f = xor()
    assert raise_radius(f, 1) is f
    g = raise_radius(BlockMap.identity(BINARY), 1)
    assert g.table.size == 8
    for row in itertools.product("01", repeat=3):
        assert g.lookup(row) == row[1]
    with pytest.raises(ValueError):
        raise_radius(f, 0)


@settings(max_examples=50)
@given(maps_r1, binary_words, st.integers(1, 2))
def test_raise_radius_preserves_semantics(f, w, r2):
    big = apply_to_pattern(raise_radius(f, r2), w)
    assert apply_to_pattern(f, w).restrict(big.coords) == big


def test_equal_syntactic_examples():
    f = xor()
    assert equal_syntactic(f, f)
    assert equal_syntactic(BlockMap.identity(BINARY), BlockMap.identity(BINARY, 1, 1))
    assert not equal_syntactic(BlockMap.identity(BINARY), BlockMap.constant(BINARY, BINARY, "0"))


def _centre_with_flip():
    ident = BlockMap.identity(BINARY, 1, 1)
    t = ident.table.reshape(-1).copy()
    t[-1] = 1 - t[-1]
    return ident, BlockMap(BINARY, BINARY, 1, 1, t)


def test_equal_on_examples(gm):
    f = xor()
    assert equal_on(f, f, gm).yes
    ident, flipped = _centre_with_flip()
    assert [str(p) for p in disagreements(ident, flipped)] == [str(Pattern.word("111", start=-1))]
    assert equal_on(ident, flipped, gm).yes
    assert equal_on(ident, flipped, Full(BINARY)).no


def test_equal_on_2d():
    ident = BlockMap.identity(BINARY, 2, 0)
    other = BlockMap.constant(BINARY, BINARY, "0", 2)
    assert equal_on(ident, other, checkerboard()).no


def test_equal_on_unknown_when_language_undecided():
    from test_shifts import period5

    X = period5()
    ident = BlockMap.identity(X.alphabet, 2, 0)
    other = BlockMap.constant(X.alphabet, X.alphabet, "0", 2)
    assert equal_on(ident, other, X, budget=2).unknown


@settings(max_examples=80)
@given(maps_r1, maps_r1)
def test_equal_on_full_is_syntactic(f, g):
    assert equal_on(f, g, Full(BINARY)).yes == equal_syntactic(f, g)


@settings(max_examples=80, deadline=None)
@given(maps_r1, maps_r1)
def test_equal_on_matches_pattern_oracle(f, g):
    language = language_enumerate(golden_mean(), ball(3, 1))
    agree = all(apply_to_pattern(f, p) == apply_to_pattern(g, p) for p in language)
    assert equal_on(f, g, golden_mean()).yes == agree


def test_enumeration_counts_and_order():
    maps = list(enumerate_blockmaps(BINARY, BINARY, 1))
    assert [m.radius for m in maps].count(0) == 4
    assert [m.radius for m in maps].count(1) == 256
    assert (maps[0].table == 0).all() and (maps[4].table == 0).all()
    radius1 = [tuple(m.table.reshape(-1)) for m in maps[4:]]
    assert radius1 == sorted(radius1)
    with pytest.raises(ValueError):
        list(enumerate_blockmaps(BINARY, BINARY, -1))


def test_composition_associative():
    rng = random.Random(7)
    for _ in range(30):
        f, g, h = (random_map(rng, rng.randint(0, 1)) for _ in range(3))
        assert equal_syntactic(compose(compose(f, g), h), compose(f, compose(g, h)))


@settings(max_examples=50)
@given(maps_r1, binary_words, st.integers(-3, 3))
def test_apply_commutes_with_shift(f, w, g):
    assert apply_to_pattern(f, shift_pattern(w, (g,))) == shift_pattern(apply_to_pattern(f, w), (g,))


def test_2d_table_layout():
    # cells of the radius-1 ball are lexicographic, so index 1 is (-1, 0)
    f = BlockMap.from_rule(BINARY, BINARY, 2, 1, lambda b: b[1])
    w = Pattern.from_mapping({c: ("1" if c == (-1, 0) else "0") for c in ball(1, 2)})
    assert apply_to_pattern(f, w).mapping == {(0, 0): "1"}
