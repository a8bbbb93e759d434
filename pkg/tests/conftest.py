"""Collects the one-line verdicts of the acceptance suite and prints them at the end of the run."""

import pytest

_VERDICTS: dict[int, tuple[bool, str]] = {}


class Verdicts:
    def record(self, criterion: int, ok: bool, detail: str) -> None:
        _VERDICTS[criterion] = (bool(ok), detail)
        print(line(criterion, ok, detail))


def line(criterion: int, ok: bool, detail: str) -> str:
    return f"acceptance {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.fixture(scope="session")
def verdicts() -> Verdicts:
    return Verdicts()


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_VERDICTS):
        ok, detail = _VERDICTS[k]
        terminalreporter.write_line(line(k, ok, detail))
