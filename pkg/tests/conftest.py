import pytest

_OUTCOMES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, label): acceptance criterion this test decides")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        cid, label = marker.args
        _OUTCOMES.append((cid, label, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for cid, label, verdict in _OUTCOMES:
        terminalreporter.write_line(f"{verdict}  criterion {cid:<3} {label}")
