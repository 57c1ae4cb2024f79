import itertools

import pytest
from hypothesis import strategies as st

from linsys.core import LinearSystem
from linsys.generators import chat, example_c34, projective_plane

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def c34():
    return example_c34()


@pytest.fixture(scope="session")
def pp3():
    return projective_plane(3)


@pytest.fixture(scope="session")
def chat_system():
    return chat()


def build(lines, extra_points=0):
    """Small helper: lines as strings like "abc" over single-letter points."""
    pts = sorted({c for l in lines for c in l})
    pts += [f"z{i}" for i in range(extra_points)]
    idx = {p: i for i, p in enumerate(pts)}
    return LinearSystem(tuple(pts), tuple(frozenset(idx[c] for c in l) for l in lines))


@st.composite
def linear_systems(draw, max_points=10, max_lines=8, min_line=1, max_line=4):
    """Random linear systems; lines that would meet an accepted line twice are dropped."""
    n = draw(st.integers(1, max_points))
    raw = draw(st.lists(
        st.sets(st.integers(0, n - 1), min_size=min_line, max_size=min(max_line, n)),
        max_size=max_lines,
    ))
    lines = []
    for cand in raw:
        cand = frozenset(cand)
        if all(len(cand & l) <= 1 and cand != l for l in lines):
            lines.append(cand)
    return LinearSystem(tuple(f"v{i}" for i in range(n)), tuple(lines))


def pairwise_ok(ls):
    return all(len(a & b) <= 1 for a, b in itertools.combinations(ls.lines, 2))
