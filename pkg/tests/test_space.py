import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from autoshift.space import (
    COORD_LIMIT,
    Pattern,
    add,
    ball,
    bounding_box,
    check_coord,
    enumerate_extensions,
    occurs_in,
    shift_pattern,
)

from conftest import patterns_1d, patterns_2d

offsets_1d = st.integers(-5, 5).map(lambda i: (i,))
offsets_2d = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


def test_shift_identity():
    w = Pattern.word("a")
    assert shift_pattern(w, (0,)) == w


def test_shift_translates_support():
    w = Pattern.word("ab")
    moved = shift_pattern(w, (1,))
    assert moved.support == {(1,), (2,)}
    assert moved.symbols == ("a", "b")


@given(patterns_1d(), offsets_1d)
def test_shift_round_trip(w, g):
    assert shift_pattern(shift_pattern(w, g), (-g[0],)) == w


@given(patterns_2d(), offsets_2d, offsets_2d)
def test_shift_is_an_action(w, g, h):
    assert shift_pattern(shift_pattern(w, g), h) == shift_pattern(w, add(g, h))


def test_occurs_in_examples():
    assert occurs_in(Pattern.word("11"), Pattern.word("0110"))
    assert not occurs_in(Pattern.word("11"), Pattern.word("0101"))
    assert occurs_in(Pattern.empty(), Pattern.word("0101"))
    assert occurs_in(Pattern.empty(), Pattern.empty())


def test_occurs_in_gapped_pattern():
    v = Pattern.from_mapping({(0,): "1", (2,): "1"})
    assert occurs_in(v, Pattern.word("0101"))
    assert not occurs_in(v, Pattern.word("0110"))


@given(patterns_1d(max_cells=3), patterns_1d(max_cells=6), offsets_1d)
def test_occurs_in_translation_invariant(v, w, g):
    assert occurs_in(shift_pattern(v, g), shift_pattern(w, g)) == occurs_in(v, w)
    assert occurs_in(shift_pattern(v, g), w) == occurs_in(v, w)


def _brute_occurs(v, w):
    if not v.cells:
        return True
    wm = w.mapping
    for anchor in w.coords:
        g = (anchor[0] - v.coords[0][0],)
        if all(wm.get(add(c, g)) == s for c, s in v.cells):
            return True
    return False


@given(patterns_1d(max_cells=3), patterns_1d(max_cells=7))
def test_occurs_in_matches_brute_force(v, w):
    assert occurs_in(v, w) == _brute_occurs(v, w)


def test_extension_examples():
    w = Pattern.from_mapping({(0, 0): "0"})
    assert list(enumerate_extensions(w, [(0, 0)], ("0", "1"))) == [w]
    assert len(list(enumerate_extensions(w, [(0, 0), (1, 0)], ("0", "1")))) == 2
    half = Pattern.from_mapping({(0, 0): "0", (1, 1): "1"})
    square = list(itertools.product((0, 1), repeat=2))
    exts = list(enumerate_extensions(half, square, ("0", "1")))
    assert len(exts) == 4
    assert len(set(exts)) == 4
    assert all(e.restrict(half.coords) == half for e in exts)


def test_extension_requires_containment():
    with pytest.raises(ValueError):
        list(enumerate_extensions(Pattern.word("01"), [(0,)], ("0", "1")))


@given(patterns_1d(max_cells=3, lo=-2, hi=2), st.integers(0, 3))
def test_extension_count(w, r):
    window = set(ball(r, 1)) | w.support
    exts = list(enumerate_extensions(w, window, ("0", "1", "2")))
    assert len(exts) == 3 ** (len(window) - len(w))
    assert all(e.support == window for e in exts)


def test_empty_pattern_is_valid():
    e = Pattern.empty(2)
    assert len(e) == 0 and e.support == frozenset()


def test_duplicate_coordinates_rejected():
    with pytest.raises(ValueError):
        Pattern((((0,), "a"), ((0,), "b")))


def test_ball_and_box():
    assert ball(1, 1) == ((-1,), (0,), (1,))
    assert len(ball(2, 2)) == 25
    assert list(ball(1, 2)) == sorted(ball(1, 2))
    assert bounding_box([(0, 0), (1, 2)], 2) == frozenset(itertools.product(range(2), range(3)))


def test_coordinate_overflow():
    with pytest.raises(OverflowError):
        check_coord((COORD_LIMIT,))
    with pytest.raises(OverflowError):
        add((COORD_LIMIT - 1,), (1,))
