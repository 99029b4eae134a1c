"""``autoshift`` command line.

Exit codes: 0 success / Yes, 1 No, 2 Unknown (budget exhausted),
64 usage error, 65 data format error.
"""

from __future__ import annotations

import argparse
import sys

from . import acceptance
from .autgroup import cpnf_apply, cpnf_of_word, crosscheck, evaluate_word_naive, nontrivial_entries
from .formats import (
    FormatError,
    dumps,
    load_file,
    pattern_from_json,
    pattern_to_json,
    spec_from_json,
    word_from_json,
    word_to_json,
)
from .reduction import CompileParams, PrimeAlphabetError, compile, word_is_identity
from .shifts import (
    AlphabetError,
    Full,
    SunnySideUp,
    Verdict,
    colang_semidecide,
    default_budget,
    default_schedule,
    language_contains,
)

EXIT_YES, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATA = 64, 65

_EXIT = {Verdict.YES: EXIT_YES, Verdict.NO: EXIT_NO, Verdict.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _symbols(text: str) -> tuple:
    return tuple(s.strip() for s in text.split(",") if s.strip())


def cmd_check(args) -> int:
    spec = spec_from_json(load_file(args.spec))
    w = pattern_from_json(load_file(args.pattern), spec.dim)
    ans = language_contains(spec, w, args.budget)
    if not ans.no:
        print(str(ans))
        return _EXIT[ans.verdict]
    schedule = default_schedule(w, args.budget)
    flagged = colang_semidecide(spec, w, schedule)
    if flagged is None:
        print("No")
    else:
        extensions = len(spec.alphabet) ** (len(schedule[flagged]) - len(w))
        print(f"No (flagged at window {flagged})")
        print(f"window {flagged}: all {extensions} extensions locally inadmissible")
    return EXIT_NO


def cmd_compile(args) -> int:
    u = pattern_from_json(load_file(args.pattern))
    try:
        params = CompileParams(prime=_symbols(args.prime), cycle=_symbols(args.cycle) if args.cycle else None)
    except PrimeAlphabetError as exc:
        raise UsageError(str(exc)) from None
    trace: list[str] = []
    word = compile(u, params, trace)
    print(dumps(word_to_json(word)))
    if args.trace:
        for line in trace:
            print(line, file=sys.stderr)
        print(f"{len(word)} letters", file=sys.stderr)
    return 0


def _load_xy(args):
    X = spec_from_json(load_file(args.x))
    Y = spec_from_json(load_file(args.y))
    if not isinstance(Y, (Full, SunnySideUp)):
        raise FormatError("Y must be a full shift or a sunny-side-up shift")
    if X.dim != Y.dim:
        raise FormatError("X and Y have different dimensions")
    return X, Y


def cmd_eval(args) -> int:
    X, Y = _load_xy(args)
    word = word_from_json(load_file(args.word), Y.alphabet)
    p = pattern_from_json(load_file(args.input), X.dim)
    for _, s in p.cells:
        if not (isinstance(s, tuple) and len(s) == 2):
            raise FormatError("input symbols must be [x, y] pairs")
    if args.naive:
        out = evaluate_word_naive(word, p, X.alphabet, Y.alphabet)
    else:
        out = cpnf_apply(cpnf_of_word(word, X.alphabet, Y.alphabet, X.dim), p)
    print(dumps(pattern_to_json(out)))
    return 0


def cmd_wordpb(args) -> int:
    X = spec_from_json(load_file(args.x))
    Y = spec_from_json(load_file(args.y))
    if not isinstance(Y, (Full, SunnySideUp)):
        raise FormatError("Y must be a full shift or a sunny-side-up shift")
    word = word_from_json(load_file(args.word), Y.alphabet)
    ans = word_is_identity(word, X, Y, args.budget)
    n = cpnf_of_word(word, X.alphabet, Y.alphabet, X.dim)
    print(f"{'identity' if ans.yes else 'not identity' if ans.no else 'unknown'}: {ans}")
    print(f"{len(word)} letters, net shift {list(n.shift)}, window {[list(c) for c in n.window]}")
    for p, perm in nontrivial_entries(n):
        verdict = language_contains(X, p, args.budget)
        print(f"  {p}  {perm}  language: {verdict}")
    if args.crosscheck:
        checked, bad = crosscheck(word, X, Y, args.budget)
        print(f"crosscheck: {checked} inputs, {len(bad)} disagreements")
        if bad:
            return EXIT_DATA
    return _EXIT[ans.verdict]


def cmd_verify(args) -> int:
    results = acceptance.run_all()
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="autoshift", description="Subshift languages and word problems in automorphism groups.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide whether a pattern is in a subshift's language")
    p.add_argument("spec")
    p.add_argument("pattern")
    p.add_argument("--budget", type=int, default=default_budget())
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compile", help="compile a pattern into a generator word")
    p.add_argument("pattern")
    p.add_argument("--prime", default="a,b,c,d,e", help="prime alphabet, at least 5 symbols")
    p.add_argument("--cycle", default=None, help="3-cycle a,b,c (default: first three prime symbols)")
    p.add_argument("--trace", action="store_true", help="print the recursion tree to stderr")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("eval", help="apply a generator word to a pattern over X x Y")
    p.add_argument("word")
    p.add_argument("input")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--naive", action="store_true", help="use letter-by-letter evaluation")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("wordpb", help="decide whether a word is the identity on X x Y")
    p.add_argument("word")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--budget", type=int, default=default_budget())
    p.add_argument("--crosscheck", action="store_true")
    p.set_defaults(func=cmd_wordpb)

    p = sub.add_parser("verify", help="run the acceptance sweeps")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"autoshift: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, AlphabetError, OSError, ValueError, TypeError) as exc:
        print(f"autoshift: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
