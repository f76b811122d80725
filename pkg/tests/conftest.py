"""Shared pytest plumbing: one pass/fail line per acceptance criterion."""

import re

_CRITERION = re.compile(r"::test_criterion_(\d+)")

_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _CRITERION.search(report.nodeid)
    if m:
        _results[int(m.group(1))] = report.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_results):
        verdict = "PASS" if _results[num] else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {verdict}")
