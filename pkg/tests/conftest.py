from __future__ import annotations

from pathlib import Path

import pytest

from sfec.instance import load_instance

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "sfec" / "fixtures"

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / f"{name}.json"


@pytest.fixture
def load_fixture():
    return lambda name: load_instance(FIXTURES / f"{name}.json")


@pytest.fixture
def acceptance_line():
    """Record one pass/fail line; printed in the terminal summary."""

    def record(number: int, passed: bool, text: str) -> None:
        _ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {text}")
        print(_ACCEPTANCE_LINES[-1])

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
