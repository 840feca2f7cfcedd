import pytest


@pytest.fixture
def report(capsys):
    """Acceptance reporter: prints one PASS/FAIL line per criterion straight
    to the terminal (bypassing capture) and asserts the outcome."""

    def _report(name, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] {name}"
        if detail:
            line += f": {detail}"
        with capsys.disabled():
            print(line, flush=True)
        assert ok, line

    return _report
