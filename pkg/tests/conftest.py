import os
import sys

from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from orientchi.core import Digraph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("default")


@st.composite
def digraphs(draw, min_n=0, max_n=8):
    """Oriented graphs: each pair absent, forward or backward."""
    n = draw(st.integers(min_n, max_n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            state = draw(st.integers(0, 2))
            if state == 1:
                edges.append((i, j))
            elif state == 2:
                edges.append((j, i))
    return Digraph(n, tuple(edges))


def graph(n, *edges, name=None):
    return Digraph(n, tuple(edges), name)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
