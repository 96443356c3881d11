import pytest

_RESULTS: dict[int, str] = {}


@pytest.fixture
def record(capsys):
    """Log one PASS/FAIL line for an acceptance criterion, then assert it."""
    def _record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _RESULTS[number] = line
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line
    return _record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_RESULTS):
            terminalreporter.write_line(_RESULTS[n])
