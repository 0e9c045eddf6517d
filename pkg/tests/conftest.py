import itertools

import pytest
from hypothesis import strategies as st

from catfield import build_field, builtin_fixture

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def table1():
    return builtin_fixture("TABLE1")


@pytest.fixture
def table2():
    return builtin_fixture("TABLE2")


@pytest.fixture
def uniform8():
    return builtin_fixture("UNIFORM8")


@pytest.fixture
def copy_field():
    return builtin_fixture("COPY")


@pytest.fixture
def chain():
    return builtin_fixture("CHAIN")


@st.composite
def fields(draw, max_sites=3, max_alphabet=3, max_weight=4):
    """Small fields with unreachable labels pruned away."""
    n = draw(st.integers(1, max_sites))
    shape = draw(st.lists(st.integers(1, max_alphabet), min_size=n, max_size=n))
    cells = 1
    for m in shape:
        cells *= m
    weights = draw(st.lists(st.integers(0, max_weight), min_size=cells, max_size=cells)
                   .filter(any))
    alphabets = [tuple(str(v) for v in range(m)) for m in shape]
    rows = zip(itertools.product(*alphabets), weights)
    return build_field([(f"S{k}", a) for k, a in enumerate(alphabets)], rows, prune_unreachable=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
