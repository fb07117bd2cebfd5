from __future__ import annotations

import pytest

from idealpowers import RingContext, from_text


@pytest.fixture
def ideal():
    """ideal("x,y", "(x^2, x*y)") -> MonomialIdeal."""
    def make(variables: str, text: str, characteristic: int = 0):
        R = RingContext(tuple(v.strip() for v in variables.split(",")), characteristic)
        return from_text(R, text)
    return make


_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """criterion(number, ok, detail) records and prints one acceptance line."""
    def record(number: int, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        _CRITERIA.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
