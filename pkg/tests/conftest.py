import pytest
from hypothesis import strategies as st

from autoshift.shifts import Alphabet, Full, golden_mean
from autoshift.space import Pattern

BINARY = Alphabet(("0", "1"))
PRIME = Alphabet(("a", "b", "c", "d", "e"))


@pytest.fixture
def gm():
    return golden_mean()


@pytest.fixture
def full5():
    return Full(PRIME)


def patterns_1d(alphabet=("0", "1"), max_cells=5, lo=-4, hi=4):
    """Hypothesis strategy for small 1D patterns."""
    return st.dictionaries(
        st.integers(lo, hi).map(lambda i: (i,)), st.sampled_from(alphabet), max_size=max_cells
    ).map(lambda d: Pattern.from_mapping(d, 1))


def patterns_2d(alphabet=("0", "1"), max_cells=4, lo=-2, hi=2):
    coords = st.tuples(st.integers(lo, hi), st.integers(lo, hi))
    return st.dictionaries(coords, st.sampled_from(alphabet), max_size=max_cells).map(
        lambda d: Pattern.from_mapping(d, 2)
    )


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", [])
    if results:
        terminalreporter.section("acceptance criteria")
        for r in sorted(results, key=lambda r: r.number):
            terminalreporter.write_line(r.line())
