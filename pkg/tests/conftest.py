import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rudraksh.params import PARAMSETS  # noqa: E402

ALL_SETS = list(PARAMSETS.values())

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=ALL_SETS, ids=[p.name for p in ALL_SETS])
def ps(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
