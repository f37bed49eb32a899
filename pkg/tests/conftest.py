import pytest

_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(number, title, passed, detail)."""
    results = request.config.stash[_RESULTS]

    def record(number, title, passed, detail=""):
        results.append((number, title, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = sorted(config.stash.get(_RESULTS, []), key=lambda r: r[0])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in results:
        line = f"{'PASS' if passed else 'FAIL'}  [{number}] {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
