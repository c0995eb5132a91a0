from pathlib import Path

import pytest

from fsegre.graded import RingSpec

DATA = Path(__file__).resolve().parent.parent / "data"

# acceptance lines collected by test_acceptance.py, echoed in the summary
ACCEPTANCE_LINES: list = []


def ring_32():
    return RingSpec.make(2, [("x", 3), ("y", 2), ("z", 2)], ["x^2+y^3+z^3"])


def ring_32_s():
    return RingSpec.make(2, [("u", 2), ("v", 2)])


def ring_42(p=7):
    return RingSpec.make(p, [("x", 21), ("y", 14), ("z", 6)], ["x^2+y^3+z^7"])


def ring_42_s(p=7):
    return RingSpec.make(p, [("u", 5), ("v", 4), ("w", 4)], ["u^4+v^5+w^5"])


def ring_53(p):
    return RingSpec.make(p, [("x", 3 * p), ("y", 2 * p), ("z", 6)], [f"x^2+y^3-z^{p}"])


def plane(p, w=(1, 1)):
    return RingSpec.make(p, [("u", w[0]), ("v", w[1])])


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
