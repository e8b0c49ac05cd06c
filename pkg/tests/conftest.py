"""Collects acceptance results and prints one line per criterion."""

_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _RESULTS[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for num, (name, label) in enumerate(CRITERIA, 1):
        status = _RESULTS.get(name, "NOT RUN")
        terminalreporter.write_line(f"criterion {num:2d} {status:7s} {label}")
