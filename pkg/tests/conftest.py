import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mipe.idf import build_idf  # noqa: E402

_CRITERIA = []
_NOTES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        status = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")
        num, title = marker.args
        _CRITERIA.append((num, title, status))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, status in sorted(_CRITERIA):
        terminalreporter.write_line(f"[{status}] {num:>2}. {title}")
    for num, line in _NOTES:
        terminalreporter.write_line(f"     {num:>2}: {line}")


@pytest.fixture
def note(request):
    """Attach a detail line to the enclosing criterion's summary."""
    num = request.node.get_closest_marker("criterion").args[0]
    return lambda line: _NOTES.append((num, line))


@pytest.fixture
def two_sentence_idf():
    return build_idf(["a b", "a c"])
