"""Shared pytest configuration.

Tests marked with @pytest.mark.acceptance("<criterion>") get one summary
line each at the end of the run, so the acceptance gate reads as a
checklist: ACCEPTANCE <criterion>: PASS | FAIL.
"""

from __future__ import annotations

import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): an acceptance criterion reported in the summary"
    )
    config._acceptance_names = {}
    config._acceptance_results = {}


def pytest_collection_modifyitems(config, items):
    for item in items:
        marker = item.get_closest_marker("acceptance")
        if marker is not None:
            config._acceptance_names[item.nodeid] = marker.args[0]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    names = item.config._acceptance_names
    if item.nodeid not in names:
        return
    results = item.config._acceptance_results
    name = names[item.nodeid]
    if report.failed:
        results[name] = False
    elif report.when == "call" and report.passed:
        results.setdefault(name, True)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results):
        verdict = "PASS" if results[name] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {name}: {verdict}")
