import pytest

from bolza import enumerate_ball, surface_params


@pytest.fixture(scope="session")
def params2():
    return surface_params(2)


@pytest.fixture(scope="session")
def params3():
    return surface_params(3)


@pytest.fixture(scope="session")
def ball2(params2):
    return enumerate_ball(params2, 4 * params2.R)


@pytest.fixture(scope="session")
def ball3(params3):
    return enumerate_ball(params3, 4 * params3.R)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
