import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stackmachines import parse_machine
from stackmachines.fixtures import fixture_text


@pytest.fixture(scope="session")
def leq():
    return parse_machine(fixture_text("leq.sm"))


@pytest.fixture(scope="session")
def lw():
    return parse_machine(fixture_text("lw.sm"))


@pytest.fixture(scope="session")
def lwwr():
    return parse_machine(fixture_text("lwwr.sm"))


@pytest.fixture(scope="session")
def rot():
    return parse_machine(fixture_text("rot.sm"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
