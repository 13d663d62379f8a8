import sys

import pytest

from crnlie.parser import parse_network

EX1 = "X1 ->[k1] X2\n2 X2 ->[k2] X3\n"
EX2 = "X1 + X2 ->[k1] X2 + X3\nX3 ->[k2] X4\nX4 ->[k3] X2\n"


@pytest.fixture
def ex1():
    return parse_network(EX1)


@pytest.fixture
def ex2():
    return parse_network(EX2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
