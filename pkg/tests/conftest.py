"""Prints one pass/fail line per acceptance criterion after the run."""

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import DETAILS, TITLES

    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE):
        outcome, duration = _ACCEPTANCE[nodeid]
        num = int(nodeid.rsplit("_", 1)[-1])
        mark = "PASS" if outcome == "passed" else "FAIL"
        detail = DETAILS.get(num, "")
        terminalreporter.write_line(
            f"criterion {num:2d} {mark}  {TITLES[num]} ({duration:.1f}s){': ' + detail if detail else ''}")
