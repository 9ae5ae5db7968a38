import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from phelps_audit.model import ActionSet, InfoStructure, SignalSet  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def worked_T():
    return SignalSet(
        ((1, 0, 0), (F(1, 2), F(1, 2), 0), (0, F(1, 2), F(1, 2)), (0, 0, 1)),
        ("t1", "t2", "t3", "t4"),
    )


@pytest.fixture
def worked_A():
    return ActionSet(((1, 0, 0), (0, F(1, 2), 3)))


@pytest.fixture
def worked_pi():
    return InfoStructure((F(1, 3), 0, F(2, 3), 0))


@pytest.fixture
def worked_pi_prime():
    return InfoStructure((0, F(2, 3), 0, F(1, 3)))


@pytest.fixture
def simplex3():
    return SignalSet(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


@pytest.fixture
def segment_mid():
    return SignalSet(((1, 0), (0, 1), (F(1, 2), F(1, 2))))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
