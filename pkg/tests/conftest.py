import pytest

from thinkit.dp import record_runs

from helpers import assert_state_bounds


@pytest.fixture(autouse=True)
def solver_state_guard():
    """Every solver run in every test stays within the published state bound."""
    with record_runs() as runs:
        yield runs
    assert_state_bounds(runs)


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
