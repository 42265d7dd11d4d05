import pytest

from ruleminer.synth import FIXTURE_PATH
from ruleminer.transactions import build_db


def ids(db, *labels):
    """Sorted item ids for bare-string items."""
    return tuple(sorted(db.dictionary.id_of("item", x) for x in labels))


@pytest.fixture
def fixture_csv():
    return FIXTURE_PATH


@pytest.fixture
def abab_db():
    # [[A,B],[A,B],[A,C],[B]]
    return build_db([["A", "B"], ["A", "B"], ["A", "C"], ["B"]])


# One line per acceptance criterion, printed after the run.
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
