import json
from fractions import Fraction
from pathlib import Path

import pytest

from bamboo_pinwheel.generators import dyadic16_instance, garden16_instance

GOLDEN = Path(__file__).parent / "golden"

F = Fraction


@pytest.fixture
def golden():
    def load(name):
        path = GOLDEN / name
        text = path.read_text(encoding="utf-8")
        return json.loads(text) if path.suffix == ".json" else text
    return load


@pytest.fixture
def dyadic16():
    return dyadic16_instance()


@pytest.fixture
def garden16():
    return garden16_instance()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
