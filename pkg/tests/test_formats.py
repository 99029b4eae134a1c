import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from autoshift.autgroup import Ctrl, GenWord, Perm, Shift, three_cycle
from autoshift.blockmap import BlockMap, equal_syntactic
from autoshift.formats import (
    FormatError,
    blockmap_from_json,
    blockmap_to_json,
    dumps,
    pattern_from_json,
    pattern_to_json,
    spec_from_json,
    spec_to_json,
    word_from_json,
    word_to_json,
)
from autoshift.reduction import compile
from autoshift.shifts import Full, Product, SunnySideUp, checkerboard, golden_mean
from autoshift.space import Pattern

from conftest import BINARY, PRIME, patterns_1d, patterns_2d


@given(st.one_of(patterns_1d(), patterns_2d()))
def test_pattern_round_trip(p):
    d = json.loads(dumps(pattern_to_json(p)))
    assert pattern_from_json(d, p.dim if not p.cells else None) == p


def test_pattern_errors():
    with pytest.raises(FormatError, match="duplicate"):
        pattern_from_json({"cells": [{"at": [0], "sym": "a"}, {"at": [0], "sym": "b"}]})
    with pytest.raises(FormatError):
        pattern_from_json({"cells": [{"at": [0], "sym": "a"}, {"at": [0, 1], "sym": "b"}]})
    with pytest.raises(FormatError):
        pattern_from_json({"cells": [{"at": [0.5], "sym": "a"}]})
    with pytest.raises(FormatError):
        pattern_from_json({"cells": [{"at": [0], "sym": 3}]})
    with pytest.raises(FormatError):
        pattern_from_json({"cells": [{"at": [0], "sym": "a"}]}, dim=2)
    with pytest.raises(FormatError):
        pattern_from_json({"nope": []})


def test_product_symbols_are_lists():
    p = Pattern.from_mapping({(0,): ("1", "a")})
    assert pattern_to_json(p) == {"cells": [{"at": [0], "sym": ["1", "a"]}]}
    assert pattern_from_json(pattern_to_json(p)) == p


@pytest.mark.parametrize(
    "spec",
    [golden_mean(), checkerboard(), Full(PRIME), SunnySideUp(tuple("abcde"), "_"), Product(golden_mean(), Full(PRIME))],
)
def test_spec_round_trip(spec):
    assert spec_from_json(json.loads(dumps(spec_to_json(spec)))) == spec


def test_spec_errors():
    with pytest.raises(FormatError):
        spec_from_json({"dim": 3, "kind": "full", "alphabet": ["0"]})
    with pytest.raises(FormatError):
        spec_from_json({"dim": 1, "kind": "hexagonal"})
    with pytest.raises(FormatError):
        spec_from_json({"dim": 1, "kind": "sunny", "prime": ["a", "_"], "bottom": "_"})
    with pytest.raises(FormatError):
        spec_from_json({"dim": 1, "kind": "full", "alphabet": []})


def test_blockmap_round_trip():
    f = BlockMap.from_rule(BINARY, PRIME, 1, 1, lambda b: "abcde"[int(b[0]) + 2 * int(b[2])])
    g = blockmap_from_json(json.loads(dumps(blockmap_to_json(f))))
    assert equal_syntactic(f, g)
    bad = blockmap_to_json(f)
    bad["table"] = bad["table"][:-1]
    with pytest.raises(FormatError):
        blockmap_from_json(bad)
    bad = blockmap_to_json(f)
    bad["table"][0] = "z"
    with pytest.raises(FormatError):
        blockmap_from_json(bad)


def test_word_round_trip():
    w = compile(Pattern.from_mapping({(0, 0): "1", (1, 1): "0"}))
    d = json.loads(dumps(word_to_json(w)))
    assert word_from_json(d, PRIME) == w
    assert word_to_json(GenWord()) == {"letters": []}
    assert word_to_json(GenWord((Shift((1,)),))) == {"letters": [{"shift": [1]}]}


def test_word_errors():
    with pytest.raises(FormatError):
        word_to_json(GenWord((Ctrl("1", Perm.from_mapping(PRIME, {"a": "b", "b": "a"})),)))
    with pytest.raises(FormatError):
        word_from_json({"letters": [{"ctrl": {"sym": "1", "cycle": ["a", "b"]}}]})
    with pytest.raises(FormatError):
        word_from_json({"letters": [{"ctrl": {"sym": "1", "cycle": ["a", "a", "b"]}}]})
    with pytest.raises(FormatError):
        word_from_json({"letters": [{"hop": [1]}]})
    with pytest.raises(FormatError):
        word_from_json({"letters": [{"ctrl": {"sym": "1", "cycle": ["a", "b", "z"]}}]}, PRIME)


def test_serialization_is_canonical():
    w = compile(Pattern.word("101"))
    assert dumps(word_to_json(w)) == dumps(word_to_json(compile(Pattern.word("101"))))
    assert list(word_to_json(w)["letters"][0]) in (["shift"], ["ctrl"])
    assert "." not in dumps(spec_to_json(checkerboard()))
