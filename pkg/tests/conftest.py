import pytest

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one line per acceptance criterion for the terminal summary."""

    def record(number: int, ok: bool, note: str) -> None:
        _CRITERIA[number] = (ok, note)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({note})")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, note = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({note})")
