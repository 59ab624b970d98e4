import pytest

from korselt import _backend

ACCEPTANCE_LINES = []


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run a test once per available kernel implementation."""
    previous = _backend.name()
    _backend.use(request.param)
    yield request.param
    _backend.use(previous)


@pytest.fixture
def record_acceptance():
    def record(line):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
