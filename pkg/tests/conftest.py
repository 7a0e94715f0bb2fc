import pytest

from relgpoly.corpus import standard_corpus

_ACCEPTANCE: dict = {}


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE[number] = (title, ok, detail)


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
