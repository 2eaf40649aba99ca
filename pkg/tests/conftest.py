from importlib import resources

import pytest
from hypothesis import strategies as st

from derangefreq.graph import parse_graph
from derangefreq.perm import Derangement, Permutation, parse_cycle_form


def example_graph_path():
    return resources.files("derangefreq") / "data" / "example2_3.txt"


@pytest.fixture(scope="session")
def example_graph():
    return parse_graph(example_graph_path().read_text())


@pytest.fixture(scope="session")
def example_graph_file():
    return str(example_graph_path())


def der(text, n):
    return Derangement(parse_cycle_form(text, n).images)


@st.composite
def permutations(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def derangements(draw, min_n=2, max_n=9):
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(1, n + 1)))
    cycles, pos = [], 0
    while pos < n:
        left = n - pos
        size = left if left <= 3 else draw(st.sampled_from([*range(2, left - 1), left]))
        cycles.append(order[pos:pos + size])
        pos += size
    return Derangement.from_cycles(cycles, n)


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
