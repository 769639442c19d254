import sys

import pytest

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_outcomes: dict[int, list[bool]] = {}
_titles: dict[int, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            num, title = m.args
            _titles[num] = title
            _outcomes.setdefault(num, [])


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for num, title in _criteria_of(report):
        _outcomes.setdefault(num, []).append(report.outcome == "passed")


def _criteria_of(report):
    for kw in report.keywords:
        if kw.startswith("criterion_"):
            num = int(kw.split("_")[1])
            yield num, _titles.get(num, "")


@pytest.hookimpl(tryfirst=True)
def pytest_itemcollected(item):
    m = item.get_closest_marker("acceptance")
    if m is not None:
        item.keywords[f"criterion_{m.args[0]}"] = True


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_outcomes):
        results = _outcomes[num]
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        tr.write_line(f"criterion {num}: {status}  {_titles.get(num, '')} ({sum(results)}/{len(results)} checks)")
