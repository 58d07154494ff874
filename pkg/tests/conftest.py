from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from idealflow import graph
from idealflow.matrix import SquareMatrix

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# the running example: 0->1, 0->2, 1->2, 2->0
RUNNING_EDGES = [(0, 1), (0, 2), (1, 2), (2, 0)]
RUNNING_FLOW = [[0, 1, 1], [0, 0, 1], [2, 0, 0]]
RUNNING_S = [[0, Fraction(1, 2), Fraction(1, 2)], [0, 0, 1], [1, 0, 0]]


@pytest.fixture
def running_network():
    return graph.from_edge_list(RUNNING_EDGES)


@pytest.fixture
def running_flow():
    return SquareMatrix.from_rows(RUNNING_FLOW)


@pytest.fixture
def running_s():
    return SquareMatrix.from_rows(RUNNING_S)


small_ints = st.integers(min_value=-20, max_value=20)
fractions_ = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def square_matrices(draw, min_order=1, max_order=6, elements=fractions_):
    n = draw(st.integers(min_order, max_order))
    rows = draw(st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n))
    return SquareMatrix.from_rows(rows, "rational")


@st.composite
def premagic_matrices(draw, min_order=1, max_order=6, nonnegative=False):
    """Combination of permutation matrices plus an arbitrary diagonal.

    Signed weights are allowed unless ``nonnegative``; the diagonal is free
    because diagonal entries never affect the premagic property.
    """
    n = draw(st.integers(min_order, max_order))
    terms = draw(st.integers(1, n + 2))
    weights = st.fractions(min_value=0 if nonnegative else -10, max_value=10, max_denominator=6)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for _ in range(terms):
        p = draw(st.permutations(range(n)))
        w = draw(weights)
        for i in range(n):
            acc[i][p[i]] += w
    if not nonnegative:
        for i in range(n):
            acc[i][i] += draw(weights)
    return SquareMatrix.from_rows(acc, "rational")


@st.composite
def symmetric_matrices(draw, min_order=1, max_order=6):
    n = draw(st.integers(min_order, max_order))
    acc = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            acc[i][j] = acc[j][i] = draw(fractions_)
    return SquareMatrix.from_rows(acc, "rational")


# acceptance log: one line per criterion, printed after the run
ACCEPTANCE = []


def record_criterion(name, ok, detail=""):
    ACCEPTANCE.append((name, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
