from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from acembed.parse import load_signature

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def load(name: str):
    return load_signature(FIXTURES / f"{name}.fmod")


@pytest.fixture(scope="session")
def nat():
    return load("nat")


@pytest.fixture(scope="session")
def natnum():
    return load("natnum")


@pytest.fixture(scope="session")
def arith():
    return load("arith")


@pytest.fixture(scope="session")
def natlist():
    return load("natlist")


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion at the end of the run

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "ran": False})
    if report.when == "call" or report.failed or report.skipped:
        entry["ran"] = True
        if report.failed or report.skipped:
            entry["ok"] = False


def pytest_deselected(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            number, title = marker.args
            _criteria.setdefault(number, {"title": title, "ok": True, "ran": False})["partial"] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        if not entry["ran"] and entry.get("partial"):
            status = "NOT RUN"
        elif not (entry["ok"] and entry["ran"]):
            status = "FAIL"
        elif entry.get("partial"):
            status = "INCOMPLETE (some checks deselected)"
        else:
            status = "PASS"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}")
