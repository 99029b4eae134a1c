"""JSON encodings of patterns, subshifts, block maps and generator words.

All encoders emit keys in a fixed order and contain no floating point, so
equal objects always serialize to identical bytes.  Symbols are strings;
symbols of a product alphabet are encoded as lists of component symbols.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .autgroup import Ctrl, GenWord, Shift, three_cycle
from .blockmap import BlockMap
from .shifts import SFT, Alphabet, Full, Product, SunnySideUp
from .space import Pattern


class FormatError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False)


def load_file(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def _enc_sym(s):
    return [_enc_sym(t) for t in s] if isinstance(s, tuple) else s


def _dec_sym(s):
    if isinstance(s, list):
        return tuple(_dec_sym(t) for t in s)
    if not isinstance(s, str):
        raise FormatError(f"symbol must be a string or a list, got {s!r}")
    return s


def _require(d, key, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"missing field {key!r}")
    if kind is not None and not isinstance(d[key], kind):
        raise FormatError(f"field {key!r} has the wrong type")
    return d[key]


# -- patterns ------------------------------------------------------------------


def pattern_to_json(p: Pattern) -> dict:
    return {"cells": [{"at": list(c), "sym": _enc_sym(s)} for c, s in p.cells]}


def pattern_from_json(d, dim: int | None = None) -> Pattern:
    cells = _require(d, "cells", list)
    seen = {}
    for cell in cells:
        at = _require(cell, "at", list)
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in at):
            raise FormatError(f"coordinate {at} is not a list of integers")
        key = tuple(at)
        if key in seen:
            raise FormatError(f"duplicate coordinate {list(key)}")
        seen[key] = _dec_sym(_require(cell, "sym"))
    dims = {len(c) for c in seen}
    if len(dims) > 1:
        raise FormatError("pattern coordinates have mixed dimensions")
    if dims:
        found = dims.pop()
        if dim is not None and found != dim:
            raise FormatError(f"pattern is {found}-dimensional, expected {dim}")
        dim = found
    if dim is None:
        dim = 1
    if dim not in (1, 2):
        raise FormatError("coordinates must have length 1 or 2")
    return Pattern(tuple(seen.items()), dim)


# -- subshifts ------------------------------------------------------------------


def spec_to_json(spec) -> dict:
    if isinstance(spec, Full):
        return {"dim": spec.dim, "kind": "full", "alphabet": [_enc_sym(s) for s in spec.alphabet]}
    if isinstance(spec, SFT):
        return {
            "dim": spec.dim,
            "kind": "sft",
            "alphabet": [_enc_sym(s) for s in spec.alphabet],
            "forbidden": [pattern_to_json(f) for f in spec.forbidden],
        }
    if isinstance(spec, SunnySideUp):
        return {"dim": spec.dim, "kind": "sunny", "prime": list(spec.prime), "bottom": spec.bottom}
    if isinstance(spec, Product):
        return {"dim": spec.dim, "kind": "product", "left": spec_to_json(spec.left), "right": spec_to_json(spec.right)}
    raise TypeError(f"unsupported subshift {spec!r}")


def spec_from_json(d):
    dim = _require(d, "dim", int)
    if dim not in (1, 2):
        raise FormatError("dim must be 1 or 2")
    kind = _require(d, "kind", str)
    try:
        if kind == "full":
            return Full(Alphabet(tuple(_dec_sym(s) for s in _require(d, "alphabet", list))), dim)
        if kind == "sft":
            alphabet = Alphabet(tuple(_dec_sym(s) for s in _require(d, "alphabet", list)))
            forbidden = tuple(pattern_from_json(f, dim) for f in _require(d, "forbidden", list))
            return SFT(alphabet, forbidden, dim)
        if kind == "sunny":
            prime = tuple(_dec_sym(s) for s in _require(d, "prime", list))
            return SunnySideUp(prime, _dec_sym(_require(d, "bottom")), dim)
        if kind == "product":
            left, right = spec_from_json(_require(d, "left")), spec_from_json(_require(d, "right"))
            if left.dim != dim or right.dim != dim:
                raise FormatError("product components must share the product's dim")
            return Product(left, right)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    raise FormatError(f"unknown subshift kind {kind!r}")


# -- block maps -------------------------------------------------------------------


def blockmap_to_json(f: BlockMap) -> dict:
    out = f.out_alphabet.symbols
    return {
        "in": [_enc_sym(s) for s in f.in_alphabet],
        "out": [_enc_sym(s) for s in f.out_alphabet],
        "dim": f.dim,
        "radius": f.radius,
        "table": [_enc_sym(out[k]) for k in f.table.reshape(-1)],
    }


def blockmap_from_json(d) -> BlockMap:
    try:
        in_alphabet = Alphabet(tuple(_dec_sym(s) for s in _require(d, "in", list)))
        out_alphabet = Alphabet(tuple(_dec_sym(s) for s in _require(d, "out", list)))
        table = [out_alphabet.index(_dec_sym(s)) for s in _require(d, "table", list)]
        dim, radius = _require(d, "dim", int), _require(d, "radius", int)
        if len(table) != len(in_alphabet) ** ((2 * radius + 1) ** dim):
            raise FormatError("table length does not match the alphabet and radius")
        return BlockMap(in_alphabet, out_alphabet, dim, radius, np.array(table, dtype=np.int64))
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- generator words ------------------------------------------------------------


def word_to_json(w: GenWord) -> dict:
    letters = []
    for letter in w:
        if isinstance(letter, Shift):
            letters.append({"shift": list(letter.g)})
        else:
            cycle = letter.perm.cycle3()
            if cycle is None:
                raise FormatError(f"only 3-cycles can be serialized, got {letter.perm}")
            letters.append({"ctrl": {"sym": _enc_sym(letter.sym), "cycle": [_enc_sym(s) for s in cycle]}})
    return {"letters": letters}


def word_from_json(d, b_alphabet: Alphabet | None = None) -> GenWord:
    """Decode a word; 3-cycles are built over ``b_alphabet`` when given."""
    letters = []
    try:
        for item in _require(d, "letters", list):
            if isinstance(item, dict) and "shift" in item:
                g = item["shift"]
                if not isinstance(g, list) or not all(isinstance(v, int) for v in g):
                    raise FormatError(f"bad shift {g!r}")
                letters.append(Shift(tuple(g)))
            elif isinstance(item, dict) and "ctrl" in item:
                ctrl = item["ctrl"]
                cycle = [_dec_sym(s) for s in _require(ctrl, "cycle", list)]
                if len(cycle) != 3:
                    raise FormatError("a cycle lists exactly three symbols")
                letters.append(Ctrl(_dec_sym(_require(ctrl, "sym")), three_cycle(*cycle, alphabet=b_alphabet)))
            else:
                raise FormatError(f"unknown letter {item!r}")
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return GenWord(tuple(letters))

