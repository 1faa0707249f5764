import pytest

_OUTCOMES: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion check")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            _OUTCOMES.setdefault(mark.args[0], [mark.args[1], None])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.skipped:
        return
    if rep.when == "call" or rep.failed:
        entry = _OUTCOMES.setdefault(mark.args[0], [mark.args[1], None])
        entry[1] = rep.passed and entry[1] is not False


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        title, ok = _OUTCOMES[n]
        verdict = "PASS" if ok else ("NOT RUN" if ok is None else "FAIL")
        terminalreporter.write_line(f"ACCEPTANCE criterion {n}: {verdict} - {title}")
