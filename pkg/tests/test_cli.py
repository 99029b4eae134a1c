import json
import subprocess
import sys

import pytest

from autoshift.cli import main
from autoshift.formats import pattern_to_json, spec_to_json
from autoshift.shifts import Full, SunnySideUp, checkerboard, golden_mean
from autoshift.space import Pattern

from conftest import PRIME


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    f = {
        "gm": put("gm.json", spec_to_json(golden_mean())),
        "cb": put("cb.json", spec_to_json(checkerboard())),
        "full": put("full.json", spec_to_json(Full(PRIME))),
        "sunny": put("sunny.json", spec_to_json(SunnySideUp(tuple("abcde"), "_"))),
        "empty": put("empty.json", {"letters": []}),
        "diag": put("diag.json", pattern_to_json(Pattern.from_mapping({(0, 0): "0", (1, 1): "1"}))),
        "bad": put("bad.json", {"cells": [{"at": [0], "sym": "0"}, {"at": [0], "sym": "1"}]}),
        "garbage": str(tmp_path / "garbage.json"),
    }
    (tmp_path / "garbage.json").write_text("{not json")
    for s in ("1", "01", "11", "010", "0110"):
        f[s] = put(f"p{s}.json", pattern_to_json(Pattern.word(s)))
    f["put"] = put
    return f


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def compiled(capsys, files, key):
    code, out, _ = run(capsys, "compile", files[key])
    assert code == 0
    return files["put"](f"w{key}.json", json.loads(out))


def test_check(capsys, files):
    code, out, _ = run(capsys, "check", files["gm"], files["11"])
    assert code == 1 and out.splitlines()[0] == "No (flagged at window 0)"
    code, out, _ = run(capsys, "check", files["gm"], files["010"])
    assert code == 0 and out.strip() == "Yes"
    code, out, _ = run(capsys, "check", files["cb"], files["diag"])
    assert code == 1
    assert "window 0: all 4 extensions locally inadmissible" in out


def period5_files(files):
    forbidden = [
        pattern_to_json(Pattern.from_mapping({(0, 0): str(i), (1, 0): str(j)}))
        for i in range(5)
        for j in range(5)
        if j != (i + 1) % 5
    ]
    spec = files["put"]("p5.json", {"dim": 2, "kind": "sft", "alphabet": list("01234"), "forbidden": forbidden})
    cell = files["put"]("c.json", pattern_to_json(Pattern.from_mapping({(0, 0): "0"})))
    return spec, cell


def test_check_unknown_exit_code(capsys, files):
    spec, cell = period5_files(files)
    code, out, _ = run(capsys, "check", spec, cell, "--budget", "2")
    assert code == 2
    assert out.strip() == "Unknown (budget exhausted at window 1)"


def test_compile(capsys, files):
    code, out, _ = run(capsys, "compile", files["1"])
    assert code == 0 and len(json.loads(out)["letters"]) == 1
    code, out, err = run(capsys, "compile", files["01"], "--trace")
    assert len(json.loads(out)["letters"]) == 12
    assert err.splitlines()[-1] == "12 letters"
    code, _, err = run(capsys, "compile", files["1"], "--prime", "a,b,c,d")
    assert code == 64 and "at least 5" in err


def test_compile_is_byte_identical(capsys, files):
    outs = {run(capsys, "compile", files["0110"], "--cycle", "b,e,a")[1] for _ in range(3)}
    assert len(outs) == 1


def test_wordpb(capsys, files):
    code, out, _ = run(capsys, "wordpb", compiled(capsys, files, "11"), files["gm"], files["full"])
    assert code == 0
    code, out, _ = run(capsys, "wordpb", compiled(capsys, files, "010"), files["gm"], files["full"])
    assert code == 1
    assert str(Pattern.word("010")) in out and "language: Yes" in out
    code, out, _ = run(capsys, "wordpb", files["empty"], files["gm"], files["full"])
    assert code == 0


def test_wordpb_crosscheck(capsys, files):
    code, out, _ = run(capsys, "wordpb", compiled(capsys, files, "01"), files["gm"], files["full"], "--crosscheck")
    assert code == 1
    assert "0 disagreements" in out


def test_compile_wordpb_round_trip(capsys, files):
    X = golden_mean()
    from autoshift.shifts import language_contains

    for s in ("0", "1", "00", "01", "11", "101", "110", "0100"):
        p = files["put"](f"r{s}.json", pattern_to_json(Pattern.word(s)))
        files[s] = p
        code, _, _ = run(capsys, "wordpb", compiled(capsys, files, s), files["gm"], files["full"])
        assert (code == 0) == language_contains(X, Pattern.word(s)).no


def test_eval(capsys, files):
    w = compiled(capsys, files, "01")
    cells = Pattern(tuple(((i,), (x, y)) for i, (x, y) in enumerate(zip("0100100101001", "abcdeabcdeabc"))))
    inp = files["put"]("in.json", pattern_to_json(cells))
    code, fast, _ = run(capsys, "eval", w, inp, "--x", files["gm"], "--y", files["full"])
    assert code == 0
    code, naive, _ = run(capsys, "eval", w, inp, "--x", files["gm"], "--y", files["full"], "--naive")
    assert code == 0
    fast_cells = {tuple(c["at"]): c["sym"] for c in json.loads(fast)["cells"]}
    naive_cells = {tuple(c["at"]): c["sym"] for c in json.loads(naive)["cells"]}
    assert naive_cells and all(fast_cells[k] == v for k, v in naive_cells.items())
    # "01" at cells 0,1 moves a to b
    assert fast_cells[(0,)] == ["0", "b"]


def test_data_errors(capsys, files):
    assert run(capsys, "check", files["gm"], files["bad"])[0] == 65
    assert run(capsys, "check", files["gm"], files["garbage"])[0] == 65
    assert run(capsys, "check", files["gm"], "/nonexistent.json")[0] == 65
    assert run(capsys, "wordpb", files["empty"], files["gm"], files["gm"])[0] == 65


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["check", "only-one-arg"])
    assert exc.value.code == 64


@pytest.mark.parametrize("budget,last", [("1", 0), ("3", 2)])
def test_budget_env(files, budget, last):
    spec, cell = period5_files(files)
    proc = subprocess.run(
        [sys.executable, "-m", "autoshift.cli", "check", spec, cell],
        capture_output=True,
        text=True,
        env={"AUTOSHIFT_BUDGET": budget},
    )
    assert proc.returncode == 2
    assert proc.stdout.strip() == f"Unknown (budget exhausted at window {last})"
