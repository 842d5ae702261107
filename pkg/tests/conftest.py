import pytest

from denniston.finite_field import build_tower

DESK = [(3, 2), (5, 2), (7, 2), (3, 3)]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def t32():
    return build_tower(3, 2)


@pytest.fixture(scope="session")
def t52():
    return build_tower(5, 2)


@pytest.fixture(scope="session")
def t33():
    return build_tower(3, 3)


@pytest.fixture(scope="session", params=DESK, ids=lambda pm: f"p{pm[0]}m{pm[1]}")
def tower(request):
    return build_tower(*request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
