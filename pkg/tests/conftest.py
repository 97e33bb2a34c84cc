import pytest

from lenscryst.builders import LensParams, valid_q_tuples

ACCEPTANCE_LINES: list[str] = []

# (p, n) grid of the acceptance matrix
GRID = [(p, n) for n in (1, 2) for p in (2, 3, 4, 5)]


def lens_matrix(limit=50):
    return [LensParams(p, q) for p, n in GRID for q in valid_q_tuples(p, n, limit)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    def _record(line):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _record
