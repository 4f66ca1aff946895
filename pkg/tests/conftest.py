import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("A3CHAR_SLOW"):
        return
    skip = pytest.mark.skip(reason="slow; set A3CHAR_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_CRITERIA: dict[int, list[tuple[str, bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    _CRITERIA.setdefault(mark.args[0], []).append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        runs = _CRITERIA[n]
        failed = [name for name, ok in runs if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {n:>2}: {status}"
        if len(runs) > 1:
            line += f" ({len(runs) - len(failed)}/{len(runs)} cases)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
