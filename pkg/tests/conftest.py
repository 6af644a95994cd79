import pytest

from morseweyl.zeta import fixture_path, load_zeros

_ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion for the terminal summary."""

    def record(key, ok, detail=""):
        prev = _ACCEPTANCE.get(key)
        ok = bool(ok) and (prev is None or prev[0])
        detail = detail if prev is None else f"{prev[1]}; {detail}"
        _ACCEPTANCE[key] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")


@pytest.fixture(scope="session")
def zeros():
    return load_zeros(fixture_path())
