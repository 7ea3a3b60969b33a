"""Collects per-criterion outcomes of the acceptance tests and prints a verdict line
for each criterion at the end of the run."""

from collections import defaultdict

CRITERIA = range(1, 9)
_outcomes: dict[int, list[str]] = defaultdict(list)
_criterion_of: dict[str, int] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criterion_of[item.nodeid] = mark.args[0]


def pytest_runtest_logreport(report):
    k = _criterion_of.get(report.nodeid)
    if k is None:
        return
    if hasattr(report, "wasxfail"):
        # an expected failure is still a failed criterion
        if report.when == "call" or report.skipped:
            _outcomes[k].append("fail")
    elif report.failed:
        _outcomes[k].append("fail")
    elif report.when == "call" and report.passed:
        _outcomes[k].append("pass")


def pytest_terminal_summary(terminalreporter):
    seen = [k for k in CRITERIA if _outcomes.get(k)]
    if not seen:
        return
    terminalreporter.section("acceptance criteria")
    for k in seen:
        verdict = "FAIL" if "fail" in _outcomes[k] else "PASS"
        terminalreporter.write_line(f"CRITERION {k}: {verdict}")
