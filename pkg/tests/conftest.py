import pytest

from kspectra import fixtures

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def library():
    return fixtures.library()


@pytest.fixture(scope="session")
def classes(library):
    return {name: tuple(library[m] for m in members) for name, members in fixtures.class_library().items()}
