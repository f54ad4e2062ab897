from __future__ import annotations

import pytest

from labcount.multigraph import (
    Multigraph,
    bowtie,
    complete_graph,
    cycle_graph,
    path_graph,
    triangle_with_pendant,
)


@pytest.fixture
def k2() -> Multigraph:
    return path_graph(2)


@pytest.fixture
def p3() -> Multigraph:
    return path_graph(3)


@pytest.fixture
def k3() -> Multigraph:
    return complete_graph(3)


@pytest.fixture
def c4() -> Multigraph:
    return cycle_graph(4)


@pytest.fixture
def bow() -> Multigraph:
    return bowtie()


@pytest.fixture
def pendant() -> Multigraph:
    return triangle_with_pendant()


@pytest.fixture
def double_edge() -> Multigraph:
    return Multigraph(2, ((0, 1), (0, 1)))


@pytest.fixture
def oriented_k12() -> Multigraph:
    # v2 -> v1 and v1 -> v3 with v1, v2, v3 as vertices 0, 1, 2
    return Multigraph(3, ((1, 0), (0, 2)), True)


@pytest.fixture
def cyclic_k3() -> Multigraph:
    return Multigraph(3, ((0, 1), (1, 2), (2, 0)), True)


# Acceptance results, printed as one line each at the end of the run.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def report(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"acceptance {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
