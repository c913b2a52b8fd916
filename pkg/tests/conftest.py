import pytest
from hypothesis import settings

from shiftbribery.election import Election
from shiftbribery.pricing import unit_instance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def three_candidates():
    """Votes a > b > p and b > a > p, candidates a=0, b=1, p=2, unit prices."""
    return unit_instance(Election([[0, 1, 2], [1, 0, 2]]), 2)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
