import pytest

_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion(request):
    """Collects a one-line summary for an acceptance criterion."""
    marker = request.node.get_closest_marker("acceptance")
    number, title = marker.args
    entry = {"title": title, "detail": "", "outcome": "FAIL"}
    _ACCEPTANCE[number] = entry
    return entry


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and rep.when == "call":
        entry = _ACCEPTANCE.get(marker.args[0])
        if entry is not None:
            entry["outcome"] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        e = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {e['outcome']}: {e['title']}; {e['detail']}")
