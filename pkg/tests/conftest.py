import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from permpoly import make_field  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def F4():
    return make_field(2, 2)


@pytest.fixture
def F16():
    return make_field(2, 4)


@pytest.fixture
def F9():
    return make_field(3, 2)


@pytest.fixture
def rng():
    return random.Random(20221019)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
