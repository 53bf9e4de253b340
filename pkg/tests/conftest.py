"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

from __future__ import annotations

from collections import defaultdict

import pytest

_outcomes: dict[int, dict] = defaultdict(lambda: {"title": "", "budget": None, "failed": [], "ran": 0, "seconds": 0.0})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args[:2]
    entry = _outcomes[number]
    entry["title"] = title
    entry["budget"] = marker.kwargs.get("budget_s", entry["budget"])
    entry["seconds"] += report.duration
    if report.when == "call":
        entry["ran"] += 1
    if report.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        entry = _outcomes[number]
        failed = list(dict.fromkeys(entry["failed"]))
        over = entry["budget"] is not None and entry["seconds"] > entry["budget"]
        ok = entry["ran"] > 0 and not failed and not over
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {entry['title']} ({entry['seconds']:.1f} s"
        line += f" of {entry['budget']:g} s)" if entry["budget"] is not None else ")"
        if failed:
            line += " failed: " + ", ".join(failed)
        if over:
            line += " over time budget"
        terminalreporter.write_line(line)
