import pytest

from fbb.density import density_table
from fbb.laws import Commutator, LevyArea, Semicircle, SquareNorm

_TABLES = {}


def cached_table(name):
    if name not in _TABLES:
        law = {"gamma": SquareNorm(), "levy-area": LevyArea(),
               "commutator": Commutator(), "semicircle": Semicircle()}[name]
        _TABLES[name] = density_table(law, 400)
    return _TABLES[name]


@pytest.fixture(scope="session")
def tables():
    return cached_table


ACCEPTANCE_LINES = {}


def record(criterion, ok, detail):
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
