import pytest

from ospq import build_tables

_CACHE = {}


def tables_for(n, k):
    if (n, k) not in _CACHE:
        _CACHE[(n, k)] = build_tables(n, k)
    return _CACHE[(n, k)]


@pytest.fixture(scope="session")
def t12():
    return tables_for(1, 2)


@pytest.fixture(scope="session")
def t13():
    return tables_for(1, 3)


@pytest.fixture(scope="session")
def t23():
    return tables_for(2, 3)


@pytest.fixture(params=[(1, 2), (1, 3), (2, 3)], ids=lambda p: f"n{p[0]}k{p[1]}", scope="session")
def tables(request):
    return tables_for(*request.param)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
