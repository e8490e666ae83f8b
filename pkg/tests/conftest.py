"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    results = item.config.stash[_RESULTS]
    name = marker.args[0]
    status, seconds = results.get(name, ("PASS", 0.0))
    if report.failed:
        status = "FAIL"
    elif report.skipped:
        status = "SKIP"
    results[name] = (status, seconds + report.duration)


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_RESULTS]
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, (status, seconds) in results.items():
        terminalreporter.write_line(f"{status}  {name}  ({seconds:.1f} s)")
