import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from klr.coxeter import get_system  # noqa: E402
from klr.kltables import default_table  # noqa: E402


@pytest.fixture(scope="session")
def systems():
    return {t: get_system(t) for t in ("A1", "A2", "A3", "B2", "B3")}


@pytest.fixture(scope="session")
def tables(systems):
    return {t: default_table(W) for t, W in systems.items()}


def pytest_terminal_summary(terminalreporter):
    from _summary import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
