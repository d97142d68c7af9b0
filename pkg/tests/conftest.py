import time

import pytest

ACCEPTANCE_LINES: list[str] = []
FULL_SUITE_BUDGET_S = 300.0
_START = time.perf_counter()


@pytest.fixture
def acceptance_line():
    """Record one pass/fail line for an acceptance criterion and echo it."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    elapsed = time.perf_counter() - _START
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
    verdict = "PASS" if elapsed < FULL_SUITE_BUDGET_S else "FAIL"
    terminalreporter.write_line(f"full pytest wall time: {verdict} - {elapsed:.1f} s (budget {FULL_SUITE_BUDGET_S:.0f} s)")
