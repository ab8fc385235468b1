import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def naive_matmul(u, v, n):
    return [[sum(u[i][k] * v[k][j] for k in range(2)) % n for j in range(2)] for i in range(2)]


def naive_order(n):
    """Order of [[1,1],[1,2]] mod n by repeated plain multiplication, no cap."""
    ident = [[1 % n, 0], [0, 1 % n]]
    cat = [[1 % n, 1 % n], [1 % n, 2 % n]]
    cur, m = cat, 1
    while cur != ident:
        cur = naive_matmul(cur, cat, n)
        m += 1
    return m


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        _acceptance.setdefault(report.nodeid, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
